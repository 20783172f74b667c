//! Single rewriting steps: one basis instance applied in context.

use std::collections::BTreeMap;
use std::fmt;

use crate::basis::InstanceRef;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Left side of the instance replaced by the right side.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        })
    }
}

pub type Substitution = BTreeMap<Letter, Word>;

/// `before = prefix . theta(from) . suffix` and `after = prefix . theta(to) . suffix`,
/// where `(from, to)` is `(lhs, rhs)` forward and `(rhs, lhs)` backward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub before: Word,
    pub after: Word,
    pub instance: InstanceRef,
    pub theta: Substitution,
    pub prefix: Word,
    pub suffix: Word,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    pub fn empty(start: Word) -> Self {
        DerivationTrace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Image of `side` under `theta`; every letter must be bound.
pub fn substitute(side: &Word, theta: &Substitution) -> Option<Word> {
    let mut out = Vec::new();
    for l in side.letters() {
        out.extend_from_slice(theta.get(l)?.letters());
    }
    Some(Word::from_letters(out))
}

/// A word under rewriting, with the steps taken so far.
pub(crate) struct Rewriter {
    word: Vec<Letter>,
    start: Word,
    steps: Vec<Step>,
    record: bool,
}

impl Rewriter {
    pub fn new(w: &Word, record: bool) -> Self {
        Rewriter {
            word: w.letters().to_vec(),
            start: w.clone(),
            steps: Vec::new(),
            record,
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn into_trace(self) -> DerivationTrace {
        DerivationTrace {
            start: self.start,
            steps: self.steps,
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Applies `inst` at `pos`. A mismatch means a bug in the caller, so it
    /// is reported as an internal error rather than skipped.
    pub fn apply(
        &mut self,
        pos: usize,
        inst: InstanceRef,
        theta: &[(Letter, &[Letter])],
        dir: Direction,
    ) -> Result<()> {
        let id = inst.identity()?;
        let (from, to) = match dir {
            Direction::Forward => (&id.lhs, &id.rhs),
            Direction::Backward => (&id.rhs, &id.lhs),
        };
        let img = |side: &Word| -> Result<Vec<Letter>> {
            let mut out = Vec::new();
            for l in side.letters() {
                let v = theta
                    .iter()
                    .find(|(k, _)| k == l)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::Internal(format!("{inst}: {l} unbound")))?;
                if v.is_empty() {
                    return Err(Error::Internal(format!("{inst}: {l} bound to 1")));
                }
                out.extend_from_slice(v);
            }
            Ok(out)
        };
        let a = img(from)?;
        let b = img(to)?;
        if self.word.len() < pos + a.len() || self.word[pos..pos + a.len()] != a[..] {
            return Err(Error::Internal(format!(
                "{inst} {dir} does not match {} at {pos}",
                Word::from_letters(self.word.clone())
            )));
        }
        let before = self.record.then(|| Word::from_letters(self.word.clone()));
        self.word.splice(pos..pos + a.len(), b.iter().copied());
        if let Some(before) = before {
            let suffix_start = pos + b.len();
            self.steps.push(Step {
                before,
                after: Word::from_letters(self.word.clone()),
                instance: inst,
                theta: theta
                    .iter()
                    .map(|(k, v)| (*k, Word::from_letters(v.to_vec())))
                    .collect(),
                prefix: Word::from_letters(self.word[..pos].to_vec()),
                suffix: Word::from_letters(self.word[suffix_start..].to_vec()),
                direction: dir,
            });
        }
        Ok(())
    }

    /// Replays `steps` (taken on a separate word) backwards, shifted by `offset`.
    pub fn apply_inverse_of(&mut self, offset: usize, steps: &[Step]) -> Result<()> {
        for s in steps.iter().rev() {
            let theta: Vec<(Letter, &[Letter])> =
                s.theta.iter().map(|(k, v)| (*k, v.letters())).collect();
            self.apply(
                offset + s.prefix.len(),
                s.instance,
                &theta,
                s.direction.flip(),
            )?;
        }
        Ok(())
    }
}
