//! Stand-alone check of the canonical-form conditions on a flat word.
//!
//! Shares nothing with the rewriting code beyond `decompose`: blocks are
//! re-parsed into perfect squares and every condition is tested directly.

use std::collections::BTreeSet;
use std::fmt;

use crate::word::{decompose, Letter, Word};

use super::{CanonicalWord, PerfectSquare};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfViolation {
    /// `simple`, `squares`, `convex`, `contained` or `boundary`.
    pub condition: &'static str,
    pub detail: String,
}

impl fmt::Display for CfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} fails: {}", self.condition, self.detail)
    }
}

impl std::error::Error for CfViolation {}

fn violation(condition: &'static str, detail: String) -> CfViolation {
    CfViolation { condition, detail }
}

type Content = BTreeSet<Letter>;

/// Splits a block into perfect squares. A perfect square's root is strictly
/// increasing and its first letter is not above its last, so the root is the
/// longest increasing run and the parse is unique.
fn parse_block(block: &[Letter]) -> Option<Vec<Vec<Letter>>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < block.len() {
        let mut j = i + 1;
        while j < block.len() && block[j - 1] < block[j] {
            j += 1;
        }
        let root = &block[i..j];
        let end = j + root.len();
        if end > block.len() || &block[j..end] != root {
            return None;
        }
        out.push(root.to_vec());
        i = end;
    }
    Some(out)
}

/// Parses `w` as a canonical word, reporting the first failed condition.
pub fn parse_canonical(w: &Word) -> Result<CanonicalWord, CfViolation> {
    let d = decompose(w);
    let sim = w.simple_letters();
    for (i, (s, _)) in d.pairs.iter().enumerate() {
        if s.is_empty() || s.letters().iter().any(|l| !sim.contains(l)) {
            return Err(violation("simple", format!("segment s{} = {s}", i + 1)));
        }
    }
    let blocks: Vec<&Word> = d.blocks().collect();
    let mut parsed = Vec::with_capacity(blocks.len());
    for (k, b) in blocks.iter().enumerate() {
        if b.letters().iter().any(|l| sim.contains(l)) {
            return Err(violation("simple", format!("simple letter inside w{k}")));
        }
        let squares = parse_block(b.letters()).ok_or_else(|| {
            violation(
                "squares",
                format!("w{k} = {b} is not a product of perfect squares"),
            )
        })?;
        parsed.push(squares);
    }
    let contents: Vec<Vec<Content>> = parsed
        .iter()
        .map(|sq| sq.iter().map(|r| r.iter().copied().collect()).collect())
        .collect();
    let block_content: Vec<Content> = contents
        .iter()
        .map(|sq| sq.iter().flatten().copied().collect())
        .collect();
    for (k, sq) in contents.iter().enumerate() {
        for l in 0..sq.len() {
            for g in l + 1..sq.len() {
                let common: Content = sq[l].intersection(&sq[g]).copied().collect();
                if let Some(j) = (l..=g).find(|&j| !common.is_subset(&sq[j])) {
                    return Err(violation(
                        "convex",
                        format!("w{k}: squares {l} and {g} share letters missing from square {j}"),
                    ));
                }
            }
        }
        for l in 0..sq.len() {
            for g in 0..sq.len() {
                if l != g && sq[l].is_subset(&sq[g]) {
                    return Err(violation(
                        "contained",
                        format!("w{k}: square {l} inside square {g}"),
                    ));
                }
            }
        }
        for l in 1..sq.len() {
            for x in sq[l - 1].difference(&sq[l]) {
                for y in sq[l].difference(&sq[l - 1]) {
                    if let Some(why) = boundary_condition(&block_content, k, *x, *y) {
                        return Err(violation(
                            "boundary",
                            format!("w{k}: {x}, {y} around square {l} meet {why}"),
                        ));
                    }
                }
            }
        }
    }
    let to_squares = |sq: &Vec<Vec<Letter>>| -> Vec<PerfectSquare> {
        sq.iter()
            .map(|r| PerfectSquare::new(&r.iter().copied().collect()).expect("nonempty root"))
            .collect()
    };
    Ok(CanonicalWord {
        w0: to_squares(&parsed[0]),
        pairs: d
            .pairs
            .iter()
            .zip(&parsed[1..])
            .map(|((s, _), sq)| (s.clone(), to_squares(sq)))
            .collect(),
    })
}

fn boundary_condition(blocks: &[Content], k: usize, x: Letter, y: Letter) -> Option<&'static str> {
    let n = blocks.len();
    for g in 0..n {
        for h in 0..n {
            if blocks[g].contains(&x)
                && blocks[h].contains(&y)
                && ((g < h && h < k) || (k < g && g < h) || (h < k && k < g))
            {
                return Some("(i)");
            }
        }
    }
    (0..n)
        .any(|g| g != k && blocks[g].contains(&x) && blocks[g].contains(&y))
        .then_some("(ii)")
}

pub fn is_canonical(w: &Word) -> bool {
    parse_canonical(w).is_ok()
}
