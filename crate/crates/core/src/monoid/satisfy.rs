//! Identity satisfaction by exhaustive or sampled substitution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Assignment, Element, Monoid};
use crate::error::{Error, Result};
use crate::word::{Identity, Letter};

/// Default cap on `order^letters` for exhaustive checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatisfactionMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// A substitution under which the two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Assignment,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatisfactionReport {
    Holds,
    Fails(Witness),
    /// Sampled mode only: nothing found, which proves nothing.
    NoCounterexample {
        samples: u64,
    },
}

impl SatisfactionReport {
    pub fn holds(&self) -> bool {
        matches!(self, SatisfactionReport::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SatisfactionReport::Fails(w) => Some(w),
            _ => None,
        }
    }
}

/// Identity sides as index sequences into a dense variable vector.
struct Compiled {
    vars: Vec<Letter>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

impl Compiled {
    fn new(id: &Identity) -> Compiled {
        let vars: Vec<Letter> = id.content().into_iter().collect();
        let pos = |l: &Letter| vars.binary_search(l).unwrap();
        Compiled {
            lhs: id.lhs.letters().iter().map(pos).collect(),
            rhs: id.rhs.letters().iter().map(pos).collect(),
            vars,
        }
    }

    fn eval(&self, m: &Monoid, side: &[usize], vals: &[Element]) -> Result<Element> {
        let mut it = side.iter();
        let mut acc = match it.next() {
            Some(&i) => vals[i],
            None => return m.one().ok_or(Error::NoIdentity),
        };
        let zero = m.zero();
        for &i in it {
            if Some(acc) == zero {
                break;
            }
            acc = m.mul(acc, vals[i]);
        }
        Ok(acc)
    }

    fn check(&self, m: &Monoid, vals: &[Element]) -> Result<Option<Witness>> {
        let l = self.eval(m, &self.lhs, vals)?;
        let r = self.eval(m, &self.rhs, vals)?;
        if l == r {
            return Ok(None);
        }
        Ok(Some(Witness {
            assignment: self
                .vars
                .iter()
                .copied()
                .zip(vals.iter().copied())
                .collect(),
            lhs_value: l,
            rhs_value: r,
        }))
    }
}

pub fn satisfies(m: &Monoid, id: &Identity, mode: SatisfactionMode) -> Result<SatisfactionReport> {
    satisfies_with_budget(m, id, mode, DEFAULT_BUDGET)
}

/// Exhaustive mode finds the lexicographically first failing assignment
/// (variables in letter order, elements by index), independent of threading.
pub fn satisfies_with_budget(
    m: &Monoid,
    id: &Identity,
    mode: SatisfactionMode,
    budget: u64,
) -> Result<SatisfactionReport> {
    let c = Compiled::new(id);
    let k = c.vars.len();
    let n = m.order();
    match mode {
        SatisfactionMode::Exhaustive => {
            let needed = (n as u128).pow(k as u32);
            if needed > budget as u128 {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            if k == 0 {
                return Ok(match c.check(m, &[])? {
                    None => SatisfactionReport::Holds,
                    Some(w) => SatisfactionReport::Fails(w),
                });
            }
            let found = (0..n)
                .into_par_iter()
                .map(|first| scan_subtree(m, &c, first))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                });
            match found {
                None => Ok(SatisfactionReport::Holds),
                Some(Ok(Some(w))) => Ok(SatisfactionReport::Fails(w)),
                Some(Err(e)) => Err(e),
                Some(Ok(None)) => unreachable!(),
            }
        }
        SatisfactionMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut vals = vec![Element(0); k];
            for _ in 0..samples {
                for v in vals.iter_mut() {
                    *v = Element(rng.gen_range(0..n) as u16);
                }
                if let Some(w) = c.check(m, &vals)? {
                    return Ok(SatisfactionReport::Fails(w));
                }
            }
            Ok(SatisfactionReport::NoCounterexample { samples })
        }
    }
}

/// All assignments whose first variable is `first`, in odometer order.
fn scan_subtree(m: &Monoid, c: &Compiled, first: usize) -> Result<Option<Witness>> {
    let n = m.order() as u16;
    let k = c.vars.len();
    let mut vals = vec![Element(0); k];
    vals[0] = Element(first as u16);
    loop {
        if let Some(w) = c.check(m, &vals)? {
            return Ok(Some(w));
        }
        let mut i = k;
        loop {
            if i == 1 {
                return Ok(None);
            }
            i -= 1;
            vals[i].0 += 1;
            if vals[i].0 < n {
                break;
            }
            vals[i].0 = 0;
        }
    }
}

/// An identity holds in `S x T` iff it holds in both factors.
pub fn product_satisfaction(s: &Monoid, t: &Monoid, id: &Identity) -> Result<bool> {
    Ok(satisfies(s, id, SatisfactionMode::Exhaustive)?.holds()
        && satisfies(t, id, SatisfactionMode::Exhaustive)?.holds())
}
