//! Finite monoids given by multiplication tables.

mod catalog;
mod presentation;
mod satisfy;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::word::{Letter, Word};

pub use catalog::{catalog, catalog_names};
pub use presentation::{close_presentation, Presentation, RelationRhs, DEFAULT_REWRITE_BUDGET};
pub use satisfy::{
    product_satisfaction, satisfies, satisfies_with_budget, SatisfactionMode, SatisfactionReport,
    Witness, DEFAULT_BUDGET,
};

/// Position of an element in its monoid's table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) u16);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A letter-to-element substitution for a fixed monoid.
pub type Assignment = BTreeMap<Letter, Element>;

/// Finite monoid (or semigroup, when `one` is absent) with a dense table.
#[derive(Clone, PartialEq, Eq)]
pub struct Monoid {
    names: Vec<String>,
    table: Vec<u16>,
    one: Option<Element>,
    zero: Option<Element>,
}

impl Monoid {
    /// Validates a table given as element indices. Every entry must be in
    /// range and the operation associative.
    pub fn from_indices(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Monoid> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotSquare("no elements".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::NotSquare(format!("{n} elements is too many")));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare(format!(
                "expected {n} rows of {n} entries"
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            for &c in row {
                if c >= n {
                    return Err(Error::UnknownElement(format!("#{c}")));
                }
                flat.push(c as u16);
            }
        }
        let mut m = Monoid {
            names,
            table: flat,
            one: None,
            zero: None,
        };
        m.check_associative()?;
        let one = m.elements().find(|&e| m.is_identity(e));
        let zero = m.elements().find(|&e| m.is_zero(e));
        m.one = one;
        m.zero = zero;
        Ok(m)
    }

    /// `build_table`: names plus rows of names, row-major products.
    pub fn build_table<S: AsRef<str>>(names: &[S], rows: &[Vec<S>]) -> Result<Monoid> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        if rows.len() != names.len() {
            return Err(Error::NotSquare(format!(
                "{} names but {} rows",
                names.len(),
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != names.len() {
                return Err(Error::NotSquare(format!(
                    "row of length {} in a table of order {}",
                    row.len(),
                    names.len()
                )));
            }
            table.push(
                row.iter()
                    .map(|c| lookup(c.as_ref()))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Monoid::from_indices(names, table)
    }

    fn check_associative(&self) -> Result<()> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(
                            self.name(a).into(),
                            self.name(b).into(),
                            self.name(c).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn is_identity(&self, e: Element) -> bool {
        self.elements()
            .all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
    }

    fn is_zero(&self, z: Element) -> bool {
        self.elements()
            .all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as u16).map(Element)
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.table[a.index() * self.order() + b.index()])
    }

    pub fn one(&self) -> Option<Element> {
        self.one
    }

    pub fn zero(&self) -> Option<Element> {
        self.zero
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Element(i as u16))
    }

    pub fn element_at(&self, index: usize) -> Option<Element> {
        (index < self.order()).then_some(Element(index as u16))
    }

    /// Element of `s` by name; panics on a bad name. Handy for fixed tables.
    pub fn el(&self, name: &str) -> Element {
        self.element(name)
            .unwrap_or_else(|| panic!("no element named {name:?}"))
    }

    pub fn product_of(&self, elems: &[Element]) -> Option<Element> {
        let mut it = elems.iter().copied();
        let first = match it.next() {
            Some(e) => e,
            None => return self.one,
        };
        Some(it.fold(first, |acc, e| self.mul(acc, e)))
    }

    /// `S1`: always adjoins a fresh two-sided identity, even when `S` has one.
    pub fn adjoin_identity(&self) -> Monoid {
        let n = self.order();
        let mut name = "1".to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        let mut names = self.names.clone();
        names.push(name);
        let mut table = vec![0u16; (n + 1) * (n + 1)];
        for a in 0..=n {
            for b in 0..=n {
                table[a * (n + 1) + b] = if a == n {
                    b as u16
                } else if b == n {
                    a as u16
                } else {
                    self.table[a * n + b]
                };
            }
        }
        Monoid {
            names,
            table,
            one: Some(Element(n as u16)),
            zero: self.zero,
        }
    }

    /// Same carrier, reversed multiplication.
    pub fn dual(&self) -> Monoid {
        let n = self.order();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.table[b * n + a];
            }
        }
        Monoid {
            names: self.names.clone(),
            table,
            one: self.one,
            zero: self.zero,
        }
    }

    /// Componentwise product; `(i, j)` sits at index `i * |t| + j`.
    pub fn direct_product(&self, t: &Monoid) -> Monoid {
        let (n, m) = (self.order(), t.order());
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &t.names {
                names.push(format!("({a},{b})"));
            }
        }
        let mut table = vec![0u16; n * m * n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let left = self.table[(a / m) * n + b / m] as usize;
                let right = t.table[(a % m) * m + b % m] as usize;
                table[a * n * m + b] = (left * m + right) as u16;
            }
        }
        let pair = |x: Option<Element>, y: Option<Element>| {
            Some(Element((x?.index() * m + y?.index()) as u16))
        };
        Monoid {
            names,
            table,
            one: pair(self.one, t.one),
            zero: pair(self.zero, t.zero),
        }
    }

    /// Index of `(a, b)` in `self.direct_product(t)`.
    pub fn pair_index(&self, t: &Monoid, a: Element, b: Element) -> Element {
        Element((a.index() * t.order() + b.index()) as u16)
    }

    /// Every element satisfies `x^m = x^(m+1)` for some `m <= order`.
    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|x| {
            let mut p = x;
            for _ in 0..self.order() {
                let next = self.mul(p, x);
                if next == p {
                    return true;
                }
                p = next;
            }
            false
        })
    }

    /// The text table format: names on the first line, then one row per element.
    pub fn to_table_text(&self) -> String {
        let mut out = self.names.join(" ");
        out.push('\n');
        for a in self.elements() {
            let row: Vec<&str> = self.elements().map(|b| self.name(self.mul(a, b))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_table_text(text: &str) -> Result<Monoid> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let names: Vec<&str> = lines
            .next()
            .ok_or_else(|| ParseError::new("empty table file"))?
            .split_whitespace()
            .collect();
        let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
        Monoid::build_table(&names, &rows)
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid(order {}) ", self.order())?;
        f.write_str(&self.to_table_text())
    }
}

/// Value of `w` under `sigma`: a left-to-right fold of the table.
pub fn evaluate(m: &Monoid, w: &Word, sigma: &Assignment) -> Result<Element> {
    let mut acc: Option<Element> = None;
    for &l in w.letters() {
        let v = *sigma.get(&l).ok_or(Error::Unassigned(l))?;
        let next = match acc {
            None => v,
            Some(a) => m.mul(a, v),
        };
        acc = Some(next);
    }
    match acc {
        Some(e) => Ok(e),
        None => m.one().ok_or(Error::NoIdentity),
    }
}

/// Convenience for fixed tables: `assign(&m, &[('x', "e"), ('y', "d")])`.
pub fn assign(m: &Monoid, pairs: &[(char, &str)]) -> Assignment {
    pairs
        .iter()
        .map(|&(c, n)| (Letter::new(c), m.el(n)))
        .collect()
}

pub fn format_assignment(m: &Monoid, a: &Assignment) -> String {
    a.iter()
        .map(|(l, e)| format!("{l}:{}", m.name(*e)))
        .collect::<Vec<_>>()
        .join(",")
}
