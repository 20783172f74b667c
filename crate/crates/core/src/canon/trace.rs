//! Checking derivations: one-step instance matching and whole-trace replay.

use std::collections::BTreeMap;
use std::fmt;

use crate::basis::{basis_instances, InstanceRef};
use crate::error::{ParseError, Result};
use crate::word::{Identity, Letter, Word};

use super::rewrite::{substitute, DerivationTrace, Direction, Step, Substitution};

/// `u = prefix . theta(lhs) . suffix` and `v = prefix . theta(rhs) . suffix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceMatch {
    pub theta: Substitution,
    pub prefix: Word,
    pub suffix: Word,
}

/// Finds a substitution of nonempty words and a context turning `id` into
/// `u = v`. Contexts are tried shortest prefix first, then shortest suffix;
/// variable images shortest first.
pub fn match_instance(u: &Word, v: &Word, id: &Identity) -> Option<InstanceMatch> {
    let (a, b) = (u.letters(), v.letters());
    let common_prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let common_suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    let shortest = a.len().min(b.len());
    for p in 0..=common_prefix.min(shortest) {
        for s in 0..=common_suffix.min(shortest - p) {
            let am = &a[p..a.len() - s];
            let bm = &b[p..b.len() - s];
            let mut binds = BTreeMap::new();
            let goals = [(id.lhs.letters(), am), (id.rhs.letters(), bm)];
            if solve(&goals, 0, 0, 0, &mut binds) {
                return Some(InstanceMatch {
                    theta: binds
                        .into_iter()
                        .map(|(k, v): (Letter, &[Letter])| (k, Word::from_letters(v.to_vec())))
                        .collect(),
                    prefix: Word::from_letters(a[..p].to_vec()),
                    suffix: Word::from_letters(a[a.len() - s..].to_vec()),
                });
            }
        }
    }
    None
}

/// Backtracking over segmentations: goal `gi`, pattern index `pi`, target index `ti`.
fn solve<'a>(
    goals: &[(&[Letter], &'a [Letter])],
    gi: usize,
    pi: usize,
    ti: usize,
    binds: &mut BTreeMap<Letter, &'a [Letter]>,
) -> bool {
    let Some(&(pat, target)) = goals.get(gi) else {
        return true;
    };
    if pi == pat.len() {
        return ti == target.len() && solve(goals, gi + 1, 0, 0, binds);
    }
    let rest = target.len() - ti;
    let needed: usize = pat[pi..]
        .iter()
        .map(|l| binds.get(l).map_or(1, |b| b.len()))
        .sum();
    if needed > rest {
        return false;
    }
    let var = pat[pi];
    if let Some(&img) = binds.get(&var) {
        return target[ti..].starts_with(img) && solve(goals, gi, pi + 1, ti + img.len(), binds);
    }
    for len in 1..=rest + 1 - needed {
        binds.insert(var, &target[ti..ti + len]);
        if solve(goals, gi, pi + 1, ti + len, binds) {
            return true;
        }
    }
    binds.remove(&var);
    false
}

/// Why a trace was rejected, and at which step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceError {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

impl std::error::Error for TraceError {}

fn sides(id: &Identity, dir: Direction) -> (&Word, &Word) {
    match dir {
        Direction::Forward => (&id.lhs, &id.rhs),
        Direction::Backward => (&id.rhs, &id.lhs),
    }
}

/// The step exactly as recorded: citation, substitution and context.
fn recorded_ok(step: &Step) -> bool {
    if !step.instance.tag.is_basis() {
        return false;
    }
    let Ok(id) = step.instance.identity() else {
        return false;
    };
    let content = id.content();
    if step
        .theta
        .keys()
        .copied()
        .collect::<crate::word::LetterSet>()
        != content
        || step.theta.values().any(Word::is_empty)
    {
        return false;
    }
    let (from, to) = sides(&id, step.direction);
    let (Some(a), Some(b)) = (substitute(from, &step.theta), substitute(to, &step.theta)) else {
        return false;
    };
    step.prefix.concat(&a).concat(&step.suffix) == step.before
        && step.prefix.concat(&b).concat(&step.suffix) == step.after
}

/// Some basis instance, in either direction, relates `before` to `after`.
fn any_instance(before: &Word, after: &Word) -> Option<InstanceRef> {
    let n_max = (before.len().max(after.len()) / 2).max(2);
    basis_instances(n_max).into_iter().find_map(|(r, id)| {
        (match_instance(before, after, &id).is_some()
            || match_instance(before, after, &id.flipped()).is_some())
        .then_some(r)
    })
}

/// Replays `t` from `w`. Each step is accepted if its recorded citation is
/// exact, or failing that if `match_instance` finds the cited identity or any
/// other basis instance relating the two words.
pub fn check_trace(w: &Word, t: &DerivationTrace) -> Result<(), TraceError> {
    if t.start != *w {
        return Err(TraceError {
            step: 0,
            reason: format!("trace starts at {} instead of {w}", t.start),
        });
    }
    let mut cur = w;
    for (i, step) in t.steps.iter().enumerate() {
        if step.before != *cur {
            return Err(TraceError {
                step: i,
                reason: format!(
                    "step starts at {} but the previous step ended at {cur}",
                    step.before
                ),
            });
        }
        let cited = step
            .instance
            .identity()
            .ok()
            .filter(|_| step.instance.tag.is_basis());
        let ok = recorded_ok(step)
            || cited.is_some_and(|id| {
                let (from, to) = sides(&id, step.direction);
                match_instance(
                    &step.before,
                    &step.after,
                    &Identity::new(from.clone(), to.clone()),
                )
                .is_some()
            })
            || any_instance(&step.before, &step.after).is_some();
        if !ok {
            return Err(TraceError {
                step: i,
                reason: format!(
                    "no basis instance rewrites {} to {}",
                    step.before, step.after
                ),
            });
        }
        cur = &step.after;
    }
    Ok(())
}

fn fmt_subst(theta: &Substitution) -> String {
    theta
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// One line per step; a leading `# start` line keeps empty traces readable.
pub fn write_trace(t: &DerivationTrace) -> String {
    let mut out = format!("# start {}\n", t.start);
    for s in &t.steps {
        out.push_str(&format!(
            "{} |- {} ; schema={} ; theta={} ; ctx={}|{} ; dir={}\n",
            s.before,
            s.after,
            s.instance,
            fmt_subst(&s.theta),
            s.prefix,
            s.suffix,
            s.direction
        ));
    }
    out
}

pub fn parse_trace(text: &str) -> Result<DerivationTrace> {
    let mut start: Option<Word> = None;
    let mut steps = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(w) = rest.trim().strip_prefix("start") {
                start = Some(w.trim().parse()?);
            }
            continue;
        }
        steps.push(parse_step(line)?);
    }
    let start = match (start, steps.first()) {
        (Some(s), _) => s,
        (None, Some(s)) => s.before.clone(),
        (None, None) => return Err(ParseError::new("empty trace without a start line").into()),
    };
    Ok(DerivationTrace { start, steps })
}

fn parse_step(line: &str) -> Result<Step> {
    let bad = |what: &str| ParseError::new(format!("{what} in trace line {line:?}"));
    let fields: Vec<&str> = line.split(" ; ").map(str::trim).collect();
    let [rewrite, schema, theta, ctx, dir] = fields[..] else {
        return Err(bad("expected 5 fields").into());
    };
    let (before, after) = rewrite.split_once("|-").ok_or_else(|| bad("missing |-"))?;
    let field = |f: &'_ str, key: &str| -> Result<String> {
        f.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(|| bad(&format!("missing {key}=")).into())
    };
    let instance: InstanceRef = field(schema, "schema")?.parse()?;
    let mut subst = Substitution::new();
    let theta = field(theta, "theta")?;
    for kv in theta.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once(':').ok_or_else(|| bad("bad binding"))?;
        subst.insert(k.trim().parse()?, v.trim().parse()?);
    }
    let ctx = field(ctx, "ctx")?;
    let (p, s) = ctx.split_once('|').ok_or_else(|| bad("bad ctx"))?;
    let direction = match field(dir, "dir")?.as_str() {
        "fwd" => Direction::Forward,
        "bwd" => Direction::Backward,
        _ => return Err(bad("bad dir").into()),
    };
    Ok(Step {
        before: before.trim().parse()?,
        after: after.trim().parse()?,
        instance,
        theta: subst,
        prefix: p.trim().parse()?,
        suffix: s.trim().parse()?,
        direction,
    })
}
