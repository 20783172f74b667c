//! The identity basis of `var{A1 x B1}` as parameterized schemas, and the
//! four identities that separate it from its proper subvarieties.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::monoid::{
    catalog, evaluate, format_assignment, satisfies, Assignment, Monoid, SatisfactionMode, Witness,
};
use crate::word::{Identity, Letter, Word};

/// Schemas `E1`..`E6` form the basis; `N7`..`N10` are the non-identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaTag {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    N7,
    N8,
    N9,
    N10,
}

use SchemaTag::*;

impl SchemaTag {
    pub const ALL: [SchemaTag; 10] = [E1, E2, E3, E4, E5, E6, N7, N8, N9, N10];
    pub const BASIS: [SchemaTag; 6] = [E1, E2, E3, E4, E5, E6];
    pub const NON_IDENTITIES: [SchemaTag; 4] = [N7, N8, N9, N10];

    pub fn is_basis(self) -> bool {
        Self::BASIS.contains(&self)
    }

    /// Smallest admissible `n`, or `None` for schemas without a parameter.
    pub fn min_n(self) -> Option<usize> {
        match self {
            E4 => Some(2),
            E5 | E6 => Some(0),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            E1 => "E1",
            E2 => "E2",
            E3 => "E3",
            E4 => "E4",
            E5 => "E5",
            E6 => "E6",
            N7 => "N7",
            N8 => "N8",
            N9 => "N9",
            N10 => "N10",
        }
    }
}

impl fmt::Display for SchemaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemaTag {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| ParseError::new(format!("unknown schema {s:?}")))
    }
}

fn l(c: char) -> Letter {
    Letter::new(c)
}

fn word(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn squares(family: char, n: usize) -> Vec<Letter> {
    (1..=n as u16)
        .flat_map(|i| {
            let v = Letter::indexed(family, i);
            [v, v]
        })
        .collect()
}

fn lit(s: &str) -> Word {
    crate::word::w(s)
}

fn pairs(chain: &[&str]) -> Vec<Identity> {
    chain
        .windows(2)
        .map(|p| Identity::new(lit(p[0]), lit(p[1])))
        .collect()
}

/// Concrete identities of one schema line. Display lines with several
/// `≈` signs expand to adjacent pairs, left to right.
pub fn instantiate(tag: SchemaTag, n: usize) -> Result<Vec<Identity>> {
    match tag.min_n() {
        Some(min) if n < min => {
            return Err(Error::SchemaRange {
                tag: tag.to_string(),
                n,
            })
        }
        None if n != 0 => {
            return Err(Error::SchemaRange {
                tag: tag.to_string(),
                n,
            })
        }
        _ => {}
    }
    let (x, y, t) = (l('x'), l('y'), l('t'));
    Ok(match tag {
        E1 => {
            let mut v = pairs(&["xx", "xxx"]);
            v.extend(pairs(&["xyx", "xxyx", "xyxx"]));
            v
        }
        E2 => pairs(&["xyyx", "xyxy", "xyxyx", "yxxy", "yxyx"]),
        E3 => vec![
            Identity::new(lit("xytxsy"), lit("xyxytxsy")),
            Identity::new(lit("xtyxyxsy"), lit("xtyxsy")),
            Identity::new(lit("xtysxy"), lit("xtysxyxy")),
        ],
        E4 => {
            let ys: Vec<Letter> = (1..=n as u16).map(|i| Letter::indexed('y', i)).collect();
            let lhs = word(&[&[x], &squares('y', n), &[x]]);
            let mut rhs = vec![x];
            for &yi in &ys {
                rhs.extend([yi, yi, x]);
            }
            vec![Identity::new(lhs, Word::from_letters(rhs))]
        }
        E5 => {
            let zs = squares('z', n);
            vec![Identity::new(
                word(&[&[x, y, t, x], &zs, &[y]]),
                word(&[&[y, x, t, x], &zs, &[y]]),
            )]
        }
        E6 => {
            let zs = squares('z', n);
            vec![Identity::new(
                word(&[&[x], &zs, &[y, t, x, y]]),
                word(&[&[x], &zs, &[y, t, y, x]]),
            )]
        }
        N7 => vec![Identity::new(lit("xyytx"), lit("xyyxtx"))],
        N8 => vec![Identity::new(lit("xtyyx"), lit("xtxyyx"))],
        N9 => vec![Identity::new(lit("xsxtx"), lit("xstx"))],
        N10 => vec![Identity::new(lit("xxyy"), lit("xyyx"))],
    })
}

/// Points at one identity: `instantiate(tag, n)[pair]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceRef {
    pub tag: SchemaTag,
    pub n: usize,
    pub pair: usize,
}

impl InstanceRef {
    pub fn new(tag: SchemaTag, n: usize, pair: usize) -> Self {
        InstanceRef { tag, n, pair }
    }

    pub fn identity(&self) -> Result<Identity> {
        let mut v = instantiate(self.tag, self.n)?;
        if self.pair >= v.len() {
            return Err(Error::SchemaRange {
                tag: format!("{}[pair={}]", self.tag, self.pair),
                n: self.n,
            });
        }
        Ok(v.swap_remove(self.pair))
    }
}

impl fmt::Display for InstanceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={},pair={}]", self.tag, self.n, self.pair)
    }
}

impl FromStr for InstanceRef {
    type Err = ParseError;

    /// Accepts `E4[n=3,pair=0]` or a bare tag (`n = 0`, `pair = 0`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new(format!("bad schema reference {s:?}"));
        let s = s.trim();
        let Some((tag, rest)) = s.split_once('[') else {
            return Ok(InstanceRef::new(s.parse()?, 0, 0));
        };
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let mut n = 0;
        let mut pair = 0;
        for kv in body.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "n" => n = v,
                "pair" => pair = v,
                _ => return Err(bad()),
            }
        }
        Ok(InstanceRef::new(tag.parse()?, n, pair))
    }
}

/// Every instance of `E1`..`E6` with `E4` for `2..=n_max` and `E5`, `E6` for
/// `0..=n_max`, in schema order.
pub fn basis_instances(n_max: usize) -> Vec<(InstanceRef, Identity)> {
    let mut out = Vec::new();
    for tag in SchemaTag::BASIS {
        let ns = match tag.min_n() {
            Some(min) => min..=n_max,
            None => 0..=0,
        };
        for n in ns {
            let ids = instantiate(tag, n).expect("n within range");
            for (pair, id) in ids.into_iter().enumerate() {
                out.push((InstanceRef::new(tag, n, pair), id));
            }
        }
    }
    out
}

pub fn basis_identities(n_max: usize) -> Vec<Identity> {
    basis_instances(n_max)
        .into_iter()
        .map(|(_, id)| id)
        .collect()
}

/// Outcome of checking one identity in both factors.
#[derive(Clone, Debug)]
pub struct BasisCheck {
    pub reference: InstanceRef,
    pub identity: Identity,
    /// Name of the first factor that fails, with its witness.
    pub failure: Option<(String, Witness)>,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub checks: Vec<BasisCheck>,
}

impl BasisReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &BasisCheck> {
        self.checks.iter().filter(|c| c.failure.is_some())
    }
}

/// Checks each listed instance exhaustively in `s` and in `t`.
pub fn verify_instances(
    s: (&str, &Monoid),
    t: (&str, &Monoid),
    instances: &[(InstanceRef, Identity)],
) -> Result<BasisReport> {
    let mut checks = Vec::with_capacity(instances.len());
    for (r, id) in instances {
        let mut failure = None;
        for (name, m) in [s, t] {
            if let Some(w) = satisfies(m, id, SatisfactionMode::Exhaustive)?.witness() {
                failure = Some((name.to_string(), w.clone()));
                break;
            }
        }
        checks.push(BasisCheck {
            reference: *r,
            identity: id.clone(),
            failure,
        });
    }
    Ok(BasisReport { checks })
}

pub fn verify_basis(s: &Monoid, t: &Monoid, n_max: usize) -> Result<BasisReport> {
    verify_instances(("S", s), ("T", t), &basis_instances(n_max))
}

/// A verified substitution separating the two sides of a non-identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecord {
    pub tag: SchemaTag,
    pub identity: Identity,
    pub monoid: String,
    pub assignment: Assignment,
    pub lhs_value: String,
    pub rhs_value: String,
    /// The commonly quoted hand evaluation of this witness is wrong; the
    /// values here come from the table.
    pub recomputed: bool,
}

impl fmt::Display for WitnessRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = catalog(&self.monoid).map_err(|_| fmt::Error)?;
        write!(
            f,
            "{}\t{}\t{}\t{}\tlhs={}\trhs={}\t{}",
            self.tag,
            self.identity,
            self.monoid,
            format_assignment(&m, &self.assignment),
            self.lhs_value,
            self.rhs_value,
            if self.recomputed {
                "recomputed"
            } else {
                "as-printed"
            }
        )
    }
}

/// Witnesses for `N7`..`N10`, each re-evaluated before being returned.
pub fn nonidentity_witnesses() -> Result<Vec<WitnessRecord>> {
    type Row<'a> = (SchemaTag, &'a str, &'a [(char, &'a str)], bool);
    let table: [Row; 4] = [
        (N7, "A1", &[('x', "e"), ('y', "d"), ('t', "b")], false),
        (N8, "B1", &[('x', "e"), ('y', "d"), ('t', "b")], false),
        (N9, "A1", &[('x', "e"), ('s', "c"), ('t', "b")], true),
        (N10, "A1", &[('x', "e"), ('y', "d")], true),
    ];
    table
        .iter()
        .map(|&(tag, mname, subst, recomputed)| {
            let m = catalog(mname)?;
            let identity = instantiate(tag, 0)?.remove(0);
            let assignment = crate::monoid::assign(&m, subst);
            let lv = evaluate(&m, &identity.lhs, &assignment)?;
            let rv = evaluate(&m, &identity.rhs, &assignment)?;
            if lv == rv {
                return Err(Error::Inconsistent(format!(
                    "{tag} witness does not separate the sides in {mname}"
                )));
            }
            Ok(WitnessRecord {
                tag,
                identity,
                monoid: mname.to_string(),
                assignment,
                lhs_value: m.name(lv).to_string(),
                rhs_value: m.name(rv).to_string(),
                recomputed,
            })
        })
        .collect()
}
