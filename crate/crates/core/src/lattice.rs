//! Subvarieties of `var{A1 x B1}`: a satisfaction matrix over generator
//! monoids and the Hasse diagram of the containment order.
//!
//! Containment between nodes is read off in three ways. A node whose
//! defining identities include all of another's lies below it. A node with a
//! generator lies below another when the generator satisfies the other's
//! defining identities, with basis schemas instantiated up to `n_max`. The
//! two remaining placements (`S` below `N1`, `Q1` below the meet of `A1` and
//! `B1`) are stated identity implications and are drawn dashed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::basis::{basis_instances, instantiate, SchemaTag};
use crate::error::{Error, Result};
use crate::monoid::{catalog, satisfies, SatisfactionMode};
use crate::word::{ident, Identity};

/// A named identity used as a matrix column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub tag: String,
    pub identity: Identity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyDescriptor {
    pub name: &'static str,
    /// Catalog name of a generating monoid, if one is known.
    pub generator: Option<&'static str>,
    /// Whether the basis of `var{A1 x B1}` is among the defining identities.
    pub includes_basis: bool,
    pub extra: Vec<Column>,
    pub provenance: &'static str,
}

impl VarietyDescriptor {
    /// Defining identities with the basis instantiated up to `n_max`.
    pub fn defining_identities(&self, n_max: usize) -> Vec<Column> {
        let mut out = Vec::new();
        if self.includes_basis {
            out.extend(basis_columns(n_max));
        }
        out.extend(self.extra.iter().cloned());
        out
    }
}

fn basis_columns(n_max: usize) -> Vec<Column> {
    basis_instances(n_max)
        .into_iter()
        .map(|(r, identity)| Column {
            tag: r.to_string(),
            identity,
        })
        .collect()
}

fn nonidentity(tag: SchemaTag) -> Column {
    let identity = instantiate(tag, 0)
        .expect("non-identities have a single instance")
        .remove(0);
    Column {
        tag: tag.name().to_string(),
        identity,
    }
}

fn listed(ids: &[&str]) -> Vec<Column> {
    ids.iter()
        .map(|s| {
            let identity = ident(s);
            Column {
                tag: format!("{}={}", identity.lhs, identity.rhs),
                identity,
            }
        })
        .collect()
}

const A0_LIST: [&str; 5] = [
    "xxx=xx",
    "xxyx=xyx",
    "xyx=xyxx",
    "xyhxty=yxhxty",
    "xhytxy=xhytyx",
];

/// The thirteen nodes, bottom to top.
pub fn variety_descriptors() -> Vec<VarietyDescriptor> {
    use SchemaTag::{N10, N7, N8};
    let b01: Vec<&str> = A0_LIST.iter().copied().chain(["xxyy=yyxx"]).collect();
    let node = |name, generator, includes_basis, extra, provenance| VarietyDescriptor {
        name,
        generator,
        includes_basis,
        extra,
        provenance,
    };
    vec![
        node("T", Some("T"), false, listed(&["x=y"]), "trivial monoid"),
        node(
            "S",
            None,
            false,
            listed(&["xx=x", "xy=yx"]),
            "identity-defined; generator not fixed",
        ),
        node(
            "N1",
            Some("N1"),
            false,
            listed(&["xxx=xx", "xy=yx"]),
            "generated by N1",
        ),
        node(
            "M1",
            Some("M1"),
            false,
            listed(&["xxx=xx", "xyx=xxy", "xyx=yxx"]),
            "generated by M1",
        ),
        node(
            "L1",
            Some("L1"),
            false,
            listed(&["xxx=xx", "xyx=xxy", "xxyy=yyxx"]),
            "generated by L1",
        ),
        node(
            "R1",
            Some("R1"),
            false,
            listed(&["xxx=xx", "xyx=yxx", "xxyy=yyxx"]),
            "generated by R1",
        ),
        node("B01", Some("B01"), false, listed(&b01), "generated by B01"),
        node(
            "A01",
            Some("A01"),
            false,
            listed(&A0_LIST),
            "generated by A01",
        ),
        node(
            "Q1",
            None,
            true,
            vec![nonidentity(N10)],
            "identity-defined; generator not constructed",
        ),
        node(
            "A1^B1",
            None,
            true,
            vec![nonidentity(N7), nonidentity(N8)],
            "meet of the two maximal subvarieties",
        ),
        node(
            "A1",
            Some("A1"),
            true,
            vec![nonidentity(N8)],
            "generated by A1",
        ),
        node(
            "B1",
            Some("B1"),
            true,
            vec![nonidentity(N7)],
            "generated by B1",
        ),
        node(
            "A1xB1",
            Some("A1xB1"),
            true,
            Vec::new(),
            "generated by A1 x B1",
        ),
    ]
}

/// Stated implications placing the generator-less nodes from above.
const STATED: [(&str, &str, &str); 2] = [
    ("S", "N1", "xx=x gives xxx=xx"),
    (
        "Q1",
        "A1^B1",
        "xxyy=xyyx entails N7 and N8 modulo the basis",
    ),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Holds,
    Fails,
    Unknown(String),
}

impl Cell {
    pub fn symbol(&self) -> char {
        match self {
            Cell::Holds => 'H',
            Cell::Fails => 'F',
            Cell::Unknown(_) => '?',
        }
    }
}

/// Rows are generator monoids, columns every identity any node uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfactionMatrix {
    pub n_max: usize,
    pub rows: Vec<&'static str>,
    pub columns: Vec<Column>,
    pub cells: Vec<Vec<Cell>>,
}

impl SatisfactionMatrix {
    pub fn cell(&self, row: &str, tag: &str) -> Option<&Cell> {
        let i = self.rows.iter().position(|r| *r == row)?;
        let j = self.columns.iter().position(|c| c.tag == tag)?;
        Some(&self.cells[i][j])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("monoid");
        for c in &self.columns {
            out.push('\t');
            out.push_str(&c.tag);
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.cells) {
            out.push_str(r);
            for c in row {
                out.push('\t');
                out.push(c.symbol());
            }
            out.push('\n');
        }
        out
    }
}

/// Identity satisfaction in a catalog monoid; the product is checked
/// factorwise.
fn holds_in(generator: &str, id: &Identity) -> Result<bool> {
    let factors: &[&str] = if generator == "A1xB1" {
        &["A1", "B1"]
    } else {
        &[generator]
    };
    for f in factors {
        if !satisfies(&catalog(f)?, id, SatisfactionMode::Exhaustive)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn satisfaction_matrix(n_max: usize) -> SatisfactionMatrix {
    let nodes = variety_descriptors();
    let rows: Vec<&'static str> = nodes.iter().filter_map(|d| d.generator).collect();
    let mut columns: Vec<Column> = [SchemaTag::N7, SchemaTag::N8, SchemaTag::N9, SchemaTag::N10]
        .into_iter()
        .map(nonidentity)
        .collect();
    columns.extend(basis_columns(n_max));
    for d in &nodes {
        for c in &d.extra {
            if !columns.iter().any(|k| k.identity == c.identity) {
                columns.push(c.clone());
            }
        }
    }
    let cells = rows
        .par_iter()
        .map(|r| {
            columns
                .par_iter()
                .map(|c| match holds_in(r, &c.identity) {
                    Ok(true) => Cell::Holds,
                    Ok(false) => Cell::Fails,
                    Err(e) => Cell::Unknown(e.to_string()),
                })
                .collect()
        })
        .collect();
    SatisfactionMatrix {
        n_max,
        rows,
        columns,
        cells,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The lower node's defining identities include the upper node's.
    Syntactic,
    /// The lower node's generator satisfies the upper node's identities.
    Generator,
    Stated(&'static str),
    /// Follows from the others by transitivity.
    Transitive,
}

/// The containment order on the nodes.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub nodes: Vec<VarietyDescriptor>,
    /// `below[i][j]`: node `i` is contained in node `j` (`i != j`).
    pub below: Vec<Vec<Option<Evidence>>>,
}

impl Lattice {
    fn index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|d| d.name == name)
    }

    pub fn contained(&self, lower: &str, upper: &str) -> bool {
        match (self.index(lower), self.index(upper)) {
            (Some(i), Some(j)) => i == j || self.below[i][j].is_some(),
            _ => false,
        }
    }

    /// Covering pairs `(lower, upper)`, in node order.
    pub fn covers(&self) -> Vec<(&'static str, &'static str)> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.below[i][j].is_some()
                    && !(0..n).any(|k| self.below[i][k].is_some() && self.below[k][j].is_some())
                {
                    out.push((self.nodes[i].name, self.nodes[j].name));
                }
            }
        }
        out
    }

    /// Covering pairs of the order restricted to nodes with a generator.
    pub fn generator_covers(&self) -> Vec<(&'static str, &'static str)> {
        let keep: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].generator.is_some())
            .collect();
        let lt = |i: usize, j: usize| self.below[i][j].is_some();
        let mut out = Vec::new();
        for &i in &keep {
            for &j in &keep {
                if lt(i, j) && !keep.iter().any(|&k| lt(i, k) && lt(k, j)) {
                    out.push((self.nodes[i].name, self.nodes[j].name));
                }
            }
        }
        out
    }
}

fn includes(lower: &VarietyDescriptor, upper: &VarietyDescriptor) -> bool {
    (!upper.includes_basis || lower.includes_basis)
        && upper
            .extra
            .iter()
            .all(|c| lower.extra.iter().any(|k| k.identity == c.identity))
}

/// Builds the order from the matrix. Two distinct nodes below each other
/// mean the matrix contradicts the node definitions.
pub fn containment(m: &SatisfactionMatrix) -> Result<Lattice> {
    let nodes = variety_descriptors();
    let n = nodes.len();
    let row_holds = |generator: &str, ids: &[Column]| -> bool {
        ids.iter().all(|c| {
            let j = m.columns.iter().position(|k| k.identity == c.identity);
            let i = m.rows.iter().position(|r| *r == generator);
            matches!((i, j), (Some(i), Some(j)) if m.cells[i][j] == Cell::Holds)
        })
    };
    let mut below = vec![vec![None; n]; n];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            below[i][j] = if includes(&nodes[i], &nodes[j]) {
                Some(Evidence::Syntactic)
            } else if let Some(g) = nodes[i].generator {
                row_holds(g, &nodes[j].defining_identities(m.n_max)).then_some(Evidence::Generator)
            } else {
                None
            };
        }
    }
    let at = |name: &str| {
        nodes
            .iter()
            .position(|d| d.name == name)
            .expect("stated node")
    };
    for (lo, hi, why) in STATED {
        below[at(lo)][at(hi)].get_or_insert(Evidence::Stated(why));
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i != j && below[i][j].is_none() && below[i][k].is_some() && below[k][j].is_some()
                {
                    below[i][j] = Some(Evidence::Transitive);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if below[i][j].is_some() && below[j][i].is_some() {
                return Err(Error::Inconsistent(format!(
                    "{} and {} lie below each other",
                    nodes[i].name, nodes[j].name
                )));
            }
        }
    }
    Ok(Lattice { nodes, below })
}

/// Hasse diagram in DOT, drawn bottom to top. Nodes without a generator and
/// edges touching them are dashed.
pub fn hasse_dot(l: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    let dashed: BTreeMap<&str, bool> = l
        .nodes
        .iter()
        .map(|d| (d.name, d.generator.is_none()))
        .collect();
    for d in &l.nodes {
        let style = if dashed[d.name] { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"var{{{}}}\"{style}];",
            d.name, d.name
        );
    }
    for (lo, hi) in l.covers() {
        let style = if dashed[lo] || dashed[hi] {
            " [style=dashed]"
        } else {
            ""
        };
        let _ = writeln!(out, "  \"{lo}\" -> \"{hi}\"{style};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Covering pairs of the reference diagram, lower node first.
    const REFERENCE: [(&str, &str); 15] = [
        ("T", "S"),
        ("S", "N1"),
        ("N1", "M1"),
        ("M1", "L1"),
        ("M1", "R1"),
        ("L1", "B01"),
        ("R1", "B01"),
        ("B01", "A01"),
        ("B01", "Q1"),
        ("A01", "A1^B1"),
        ("Q1", "A1^B1"),
        ("A1^B1", "A1"),
        ("A1^B1", "B1"),
        ("A1", "A1xB1"),
        ("B1", "A1xB1"),
    ];

    fn sorted(mut v: Vec<(&'static str, &'static str)>) -> Vec<(&'static str, &'static str)> {
        v.sort();
        v
    }

    #[test]
    fn descriptors() {
        let d = variety_descriptors();
        assert_eq!(d.len(), 13);
        let a1 = d.iter().find(|d| d.name == "A1").unwrap();
        assert!(a1.includes_basis);
        assert_eq!(a1.extra[0].identity, ident("xtyyx = xtxyyx"));
        let t = d.iter().find(|d| d.name == "T").unwrap();
        assert!(holds_in(t.generator.unwrap(), &ident("x = y")).unwrap());
    }

    #[test]
    fn matrix_cells() {
        let m = satisfaction_matrix(2);
        let cell = |r, t| m.cell(r, t).unwrap().clone();
        assert_eq!(cell("A1", "N8"), Cell::Holds);
        assert_eq!(cell("A1", "N7"), Cell::Fails);
        assert_eq!(cell("B1", "N7"), Cell::Holds);
        assert_eq!(cell("B1", "N8"), Cell::Fails);
        assert_eq!(cell("A01", "N9"), Cell::Holds);
        assert_eq!(cell("N1", "xy=yx"), Cell::Holds);
        let tsv = m.to_tsv();
        assert_eq!(tsv.lines().count(), 1 + m.rows.len());
        assert!(tsv.starts_with("monoid\tN7\tN8\tN9\tN10\t"));
    }

    #[test]
    fn generators_satisfy_their_lists() {
        let m = satisfaction_matrix(2);
        for d in variety_descriptors() {
            if let Some(g) = d.generator {
                for c in d.defining_identities(2) {
                    assert_eq!(m.cell(g, &c.tag), Some(&Cell::Holds), "{g} {}", c.tag);
                }
            }
        }
    }

    #[test]
    fn order_matches_reference() {
        let l = containment(&satisfaction_matrix(2)).unwrap();
        assert_eq!(sorted(l.covers()), sorted(REFERENCE.to_vec()));
        assert!(!l.contained("A1", "B1") && !l.contained("B1", "A1"));
        assert!(!l.contained("A01", "Q1") && !l.contained("Q1", "A01"));
        assert!(l.nodes.iter().all(|d| l.contained("T", d.name)));
        let dot = hasse_dot(&l);
        assert!(dot.contains("\"A1\" -> \"A1xB1\";"));
        assert!(dot.contains("\"Q1\" [label=\"var{Q1}\", style=dashed];"));
        assert!(!dot.contains("\"A1\" -> \"B1\""));
    }

    #[test]
    fn generator_suborder() {
        let l = containment(&satisfaction_matrix(2)).unwrap();
        let expected = vec![
            ("T", "N1"),
            ("N1", "M1"),
            ("M1", "L1"),
            ("M1", "R1"),
            ("L1", "B01"),
            ("R1", "B01"),
            ("B01", "A01"),
            ("A01", "A1"),
            ("A01", "B1"),
            ("A1", "A1xB1"),
            ("B1", "A1xB1"),
        ];
        assert_eq!(sorted(l.generator_covers()), sorted(expected));
    }
}
