//! Finite presentations and their closure into multiplication tables.
//!
//! Relations are oriented by shortlex order into rewrite rules and completed
//! (Knuth-Bendix) before enumeration: several of the small presentations only
//! collapse to their intended size once critical pairs are resolved, e.g.
//! `a^2 = 0` in `<a, b | ab = 0, ba = a, b^2 = b>` follows from `a.ba = ab.a`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::Monoid;
use crate::error::{Error, ParseError, Result};
use crate::word::{Letter, Word};

/// Rewriting steps allowed while reducing a single word.
pub const DEFAULT_REWRITE_BUDGET: usize = 10_000;

/// Completion gives up once the rule set grows past this size.
const MAX_RULES: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationRhs {
    Word(Word),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Letter>,
    pub relations: Vec<(Word, RelationRhs)>,
}

impl Presentation {
    pub fn new(generators: Vec<Letter>, relations: Vec<(Word, RelationRhs)>) -> Result<Self> {
        let p = Presentation {
            generators,
            relations,
        };
        for (l, r) in &p.relations {
            let rhs = match r {
                RelationRhs::Word(w) => w.letters(),
                RelationRhs::Zero => &[],
            };
            for x in l.letters().iter().chain(rhs) {
                if !p.generators.contains(x) {
                    return Err(Error::NotAGenerator(*x));
                }
            }
        }
        Ok(p)
    }

    /// Builds from literals such as `&["ab=0", "ba=a", "bb=b"]`.
    pub fn parse_relations(gens: &str, rels: &[&str]) -> Result<Self> {
        let generators = gens.chars().map(Letter::new).collect();
        let relations = rels
            .iter()
            .map(|r| parse_relation(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(generators, relations)
    }

    pub fn zero_present(&self) -> bool {
        self.relations.iter().any(|(_, r)| *r == RelationRhs::Zero)
    }

    /// File format: a `gens: a b c` line, then one `lhs = rhs` or `lhs = 0`
    /// per line. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines
            .next()
            .ok_or_else(|| ParseError::new("empty presentation"))?;
        let gens = head
            .strip_prefix("gens:")
            .ok_or_else(|| ParseError::new("presentation must start with `gens:`"))?;
        let generators = gens
            .split_whitespace()
            .map(|g| g.parse::<Letter>())
            .collect::<Result<Vec<_>, _>>()?;
        let relations = lines.map(parse_relation).collect::<Result<Vec<_>>>()?;
        Presentation::new(generators, relations)
    }
}

fn parse_relation(line: &str) -> Result<(Word, RelationRhs)> {
    let (l, r) = line
        .split_once('=')
        .ok_or_else(|| ParseError::new(format!("relation {line:?} has no '='")))?;
    let lhs: Word = l.trim().parse()?;
    if lhs.is_empty() {
        return Err(ParseError::new(format!("relation {line:?} has an empty left side")).into());
    }
    let r = r.trim();
    let rhs = if r == "0" {
        RelationRhs::Zero
    } else {
        RelationRhs::Word(r.parse()?)
    };
    Ok((lhs, rhs))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        writeln!(f, "gens: {}", gens.join(" "))?;
        for (l, r) in &self.relations {
            match r {
                RelationRhs::Word(w) => writeln!(f, "{l} = {w}")?,
                RelationRhs::Zero => writeln!(f, "{l} = 0")?,
            }
        }
        Ok(())
    }
}

/// Symbol 0 is the zero; generators are 1..=g. Shortlex with 0 smallest.
type Sym = u8;
const ZERO: Sym = 0;

struct Rewriting {
    rules: Vec<(Vec<Sym>, Vec<Sym>)>,
    budget: usize,
}

fn shortlex_greater(a: &[Sym], b: &[Sym]) -> bool {
    (a.len(), a) > (b.len(), b)
}

fn find(hay: &[Sym], needle: &[Sym]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl Rewriting {
    fn reduce(&self, w: &[Sym]) -> Result<Vec<Sym>> {
        let mut cur = w.to_vec();
        let mut steps = 0;
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(i) = find(&cur, l) {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::RewriteBudget(self.budget));
                    }
                    cur.splice(i..i + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// Orients `a = b` after reduction; returns whether a rule was added.
    fn add_equation(&mut self, a: &[Sym], b: &[Sym]) -> Result<bool> {
        let a = self.reduce(a)?;
        let b = self.reduce(b)?;
        if a == b {
            return Ok(false);
        }
        let (l, r) = if shortlex_greater(&a, &b) {
            (a, b)
        } else {
            (b, a)
        };
        self.rules.push((l, r));
        if self.rules.len() > MAX_RULES {
            return Err(Error::RewriteBudget(self.budget));
        }
        Ok(true)
    }

    /// Words `u l2-overlap` joining the left sides of two rules.
    fn critical_pairs(&self, i: usize, j: usize) -> Vec<(Vec<Sym>, Vec<Sym>)> {
        let (l1, r1) = &self.rules[i];
        let (l2, r2) = &self.rules[j];
        let mut out = Vec::new();
        // suffix of l1 equals prefix of l2
        for k in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - k..] == l2[..k] {
                let mut a = r1.clone();
                a.extend_from_slice(&l2[k..]);
                let mut b = l1[..l1.len() - k].to_vec();
                b.extend_from_slice(r2);
                out.push((a, b));
            }
        }
        // l2 inside l1
        if i != j {
            if let Some(p) = find(l1, l2) {
                let a = r1.clone();
                let mut b = l1[..p].to_vec();
                b.extend_from_slice(r2);
                b.extend_from_slice(&l1[p + l2.len()..]);
                out.push((a, b));
            }
        }
        out
    }

    fn complete(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.rules.len() {
            for j in 0..=i {
                for (x, y) in [(i, j), (j, i)] {
                    for (a, b) in self.critical_pairs(x, y) {
                        self.add_equation(&a, &b)?;
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }
}

/// Enumerates the semigroup presented by `p` (no identity is adjoined).
pub fn close_presentation(p: &Presentation, cap: usize) -> Result<Monoid> {
    let g = p.generators.len();
    if g >= Sym::MAX as usize {
        return Err(Error::CapExceeded(cap));
    }
    let sym = |l: &Letter| p.generators.iter().position(|x| x == l).unwrap() as Sym + 1;
    let encode = |w: &Word| w.letters().iter().map(sym).collect::<Vec<_>>();
    let mut rw = Rewriting {
        rules: Vec::new(),
        budget: DEFAULT_REWRITE_BUDGET,
    };
    if p.zero_present() {
        rw.rules.push((vec![ZERO, ZERO], vec![ZERO]));
        for s in 1..=g as Sym {
            rw.rules.push((vec![s, ZERO], vec![ZERO]));
            rw.rules.push((vec![ZERO, s], vec![ZERO]));
        }
    }
    for (l, r) in &p.relations {
        let rhs = match r {
            RelationRhs::Word(w) => encode(w),
            RelationRhs::Zero => vec![ZERO],
        };
        rw.add_equation(&encode(l), &rhs)?;
    }
    rw.complete()?;

    let mut elems: Vec<Vec<Sym>> = Vec::new();
    let mut index: BTreeMap<Vec<Sym>, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut admit = |w: Vec<Sym>, elems: &mut Vec<Vec<Sym>>, queue: &mut VecDeque<usize>| {
        if index.contains_key(&w) {
            return Ok(());
        }
        if elems.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        index.insert(w.clone(), elems.len());
        queue.push_back(elems.len());
        elems.push(w);
        Ok(())
    };
    for s in 1..=g as Sym {
        admit(rw.reduce(&[s])?, &mut elems, &mut queue)?;
    }
    while let Some(e) = queue.pop_front() {
        for s in 1..=g as Sym {
            let mut w = elems[e].clone();
            w.push(s);
            admit(rw.reduce(&w)?, &mut elems, &mut queue)?;
        }
    }
    let lookup: BTreeMap<Vec<Sym>, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut table = vec![vec![0; elems.len()]; elems.len()];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let mut w = a.clone();
            w.extend_from_slice(b);
            let nf = rw.reduce(&w)?;
            table[i][j] = *lookup
                .get(&nf)
                .ok_or_else(|| Error::Internal("product left the enumerated set".into()))?;
        }
    }
    let names = elems
        .iter()
        .map(|w| {
            w.iter()
                .map(|&s| match s {
                    ZERO => "0".to_string(),
                    s => p.generators[s as usize - 1].to_string(),
                })
                .collect::<String>()
        })
        .collect();
    Monoid::from_indices(names, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(gens: &str, rels: &[&str]) -> Monoid {
        close_presentation(&Presentation::parse_relations(gens, rels).unwrap(), 100).unwrap()
    }

    #[test]
    fn j_has_three_elements() {
        let j = closed("ab", &["ab=0", "ba=a", "bb=b"]);
        assert_eq!(j.order(), 3);
        let (a, b, z) = (j.el("a"), j.el("b"), j.el("0"));
        assert_eq!(j.mul(b, a), a);
        assert_eq!(j.mul(a, b), z);
        assert_eq!(j.mul(b, b), b);
        assert_eq!(j.mul(a, a), z);
        assert_eq!(j.zero(), Some(z));
    }

    #[test]
    fn nilpotent_and_left_zero_like() {
        assert_eq!(closed("a", &["aa=0"]).order(), 2);
        let l = closed("ab", &["aa=0", "ba=0", "ab=a", "bb=b"]);
        assert_eq!(l.order(), 3);
    }

    #[test]
    fn a0_closes_to_four() {
        let a0 = closed("ab", &["aa=a", "bb=b", "ba=0"]);
        let mut names: Vec<_> = a0.names().to_vec();
        names.sort();
        assert_eq!(names, ["0", "a", "ab", "b"]);
    }

    #[test]
    fn cap_and_generator_errors() {
        let free = Presentation::parse_relations("ab", &["aa=a"]).unwrap();
        assert_eq!(close_presentation(&free, 50), Err(Error::CapExceeded(50)));
        let bad = Presentation::parse_relations("a", &["ab=0"]);
        assert_eq!(bad, Err(Error::NotAGenerator(Letter::new('b'))));
    }

    #[test]
    fn text_round_trip() {
        let p = Presentation::parse_relations("ab", &["ab=0", "ba=a", "bb=b"]).unwrap();
        let text = p.to_string();
        assert!(text.starts_with("gens: a b\n"));
        assert_eq!(Presentation::parse_text(&text).unwrap(), p);
        assert!(p.zero_present());
    }
}
