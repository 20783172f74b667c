//! The named monoids used throughout: `A` and its dual, their monoid
//! versions and product, and the small presentations they are compared with.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::presentation::{close_presentation, Presentation};
use super::Monoid;
use crate::error::{Error, Result};

const A_NAMES: [&str; 6] = ["0", "a", "b", "c", "d", "e"];

/// Rows of `A`; row `x`, column `y` holds `x * y`.
const A_ROWS: [[&str; 6]; 6] = [
    ["0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "a"],
    ["0", "0", "0", "0", "0", "b"],
    ["0", "0", "a", "0", "c", "0"],
    ["0", "0", "b", "0", "d", "0"],
    ["0", "a", "a", "c", "c", "e"],
];

const NAMES: [&str; 21] = [
    "A", "B", "A1", "B1", "A1xB1", "J", "J1", "A0", "A01", "B0", "B01", "L", "L1", "R", "R1", "M",
    "M1", "N", "N1", "T", "SL",
];

/// Every name `catalog` accepts, in display order.
pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

fn presentation(name: &str) -> Option<(&'static str, &'static [&'static str])> {
    Some(match name {
        "J" => ("ab", &["ab=0", "ba=a", "bb=b"]),
        "A0" => ("ab", &["aa=a", "bb=b", "ba=0"]),
        "B0" => ("abc", &["aa=a", "bb=b", "ab=0", "ba=0", "ac=c", "cb=c"]),
        "L" => ("ab", &["aa=0", "ba=0", "ab=a", "bb=b"]),
        "R" => ("ab", &["aa=0", "ab=0", "ba=a", "bb=b"]),
        "M" => (
            "abc",
            &[
                "cb=a", "aa=0", "ab=0", "ac=0", "ba=0", "bb=0", "bc=0", "ca=0", "cc=0",
            ],
        ),
        "N" => ("a", &["aa=0"]),
        _ => return None,
    })
}

/// Monoids that do not depend on other catalog entries.
fn build_base(name: &str) -> Result<Monoid> {
    if let Some((gens, rels)) = presentation(name) {
        return close_presentation(&Presentation::parse_relations(gens, rels)?, 64);
    }
    match name {
        "A" => {
            let rows: Vec<Vec<&str>> = A_ROWS.iter().map(|r| r.to_vec()).collect();
            Monoid::build_table(&A_NAMES, &rows)
        }
        "T" => Monoid::build_table(&["1"], &[vec!["1"]]),
        "SL" => Monoid::build_table(&["0", "1"], &[vec!["0", "0"], vec!["0", "1"]]),
        _ => Err(Error::UnknownMonoid(name.to_string())),
    }
}

/// Memoized construction of a named monoid.
pub fn catalog(name: &str) -> Result<Monoid> {
    static CACHE: OnceLock<BTreeMap<&'static str, Monoid>> = OnceLock::new();
    if !NAMES.contains(&name) {
        return Err(Error::UnknownMonoid(name.to_string()));
    }
    if let Some(m) = CACHE.get() {
        return Ok(m[name].clone());
    }
    let mut all = BTreeMap::new();
    for &n in &NAMES {
        all.insert(n, build_uncached(n, &all)?);
    }
    let m = all[name].clone();
    let _ = CACHE.set(all);
    Ok(m)
}

/// Builds `name`, resolving references against the entries built so far.
fn build_uncached(name: &str, done: &BTreeMap<&'static str, Monoid>) -> Result<Monoid> {
    let get = |n: &str| {
        done.get(n)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("catalog order: {n} before {name}")))
    };
    if let Some(base) = name.strip_suffix('1') {
        if presentation(base).is_some() {
            return Ok(get(base)?.adjoin_identity());
        }
    }
    match name {
        "B" => Ok(get("A")?.dual()),
        "A1" => Ok(get("A")?.adjoin_identity()),
        "B1" => Ok(get("A1")?.dual()),
        "A1xB1" => Ok(get("A1")?.direct_product(&get("B1")?)),
        _ => build_base(name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Element;

    #[test]
    fn orders() {
        let expect = [
            ("A", 6),
            ("A1", 7),
            ("B1", 7),
            ("A1xB1", 49),
            ("J", 3),
            ("J1", 4),
            ("A0", 4),
            ("A01", 5),
            ("B0", 4),
            ("B01", 5),
            ("L1", 4),
            ("R1", 4),
            ("M", 4),
            ("M1", 5),
            ("N1", 3),
            ("T", 1),
            ("SL", 2),
        ];
        for (n, k) in expect {
            assert_eq!(catalog(n).unwrap().order(), k, "{n}");
        }
        assert!(matches!(catalog("Q1"), Err(Error::UnknownMonoid(_))));
    }

    #[test]
    fn b_is_dual_of_a() {
        let a = catalog("A").unwrap();
        let b = catalog("B").unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(b.mul(x, y), a.mul(y, x));
            }
        }
    }

    #[test]
    fn r_is_dual_of_l_by_name() {
        let l = catalog("L").unwrap();
        let r = catalog("R").unwrap();
        for x in l.elements() {
            for y in l.elements() {
                let lr = l.name(l.mul(y, x));
                let rx = r.el(l.name(x));
                let ry = r.el(l.name(y));
                assert_eq!(r.name(r.mul(rx, ry)), lr);
            }
        }
    }

    #[test]
    fn j1_embeds_in_a1() {
        // a -> b, b -> d, 0 -> 0, 1 -> 1 is an isomorphism onto {0, 1, b, d}
        let j1 = catalog("J1").unwrap();
        let a1 = catalog("A1").unwrap();
        let image = |x: Element| {
            let n = match j1.name(x) {
                "a" => "b",
                "b" => "d",
                other => other,
            };
            a1.el(n)
        };
        for x in j1.elements() {
            for y in j1.elements() {
                assert_eq!(image(j1.mul(x, y)), a1.mul(image(x), image(y)));
            }
        }
        let mut img: Vec<_> = j1
            .elements()
            .map(|x| a1.name(image(x)).to_string())
            .collect();
        img.sort();
        assert_eq!(img, ["0", "1", "b", "d"]);
    }

    #[test]
    fn b0_relations_hold() {
        let b0 = catalog("B0").unwrap();
        let (a, b, c) = (b0.el("a"), b0.el("b"), b0.el("c"));
        assert_eq!(b0.mul(a, c), c);
        assert_eq!(b0.mul(c, b), c);
        assert_eq!(b0.mul(a, b), b0.zero().unwrap());
        assert_eq!(b0.mul(c, c), b0.zero().unwrap());
    }
}
