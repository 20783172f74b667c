//! Canonical forms of words modulo the basis, with derivation traces.
//!
//! A word is in canonical form when it reads `w0 s1 w1 ... sn wn` with the
//! simple letters in the `s` segments and every block a product of perfect
//! squares subject to the containment and boundary conditions checked in
//! [`cf`]. `canonicalize` rewrites any word into that form using only basis
//! instances, recording each one.

mod build;
pub mod cf;
mod rewrite;
pub mod trace;

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{decompose, Letter, LetterSet, Word};

use build::Builder;
pub use rewrite::{substitute, DerivationTrace, Direction, Step, Substitution};
pub use trace::{check_trace, match_instance, InstanceMatch, TraceError};

/// `(z1 ... zr)^2` for some ordering of `r` distinct letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    root: Vec<Letter>,
}

impl Square {
    pub fn from_root(root: &Word) -> Result<Square> {
        let r = root.letters();
        if r.is_empty() {
            return Err(Error::Square("empty root".into()));
        }
        if root.content().len() != r.len() {
            return Err(Error::Square(format!("root {root} repeats a letter")));
        }
        Ok(Square { root: r.to_vec() })
    }

    /// Reads a word of the form `r r`.
    pub fn parse(w: &Word) -> Result<Square> {
        let l = w.letters();
        if !l.len().is_multiple_of(2) || l[..l.len() / 2] != l[l.len() / 2..] {
            return Err(Error::Square(format!("{w} is not a square")));
        }
        Square::from_root(&w.slice(0, l.len() / 2))
    }

    pub fn root(&self) -> Word {
        Word::from_letters(self.root.clone())
    }

    pub fn realization(&self) -> Word {
        self.root().squared()
    }

    pub fn content(&self) -> LetterSet {
        self.root.iter().copied().collect()
    }
}

/// The square of the alphabetically ordered content.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectSquare {
    letters: Vec<Letter>,
}

impl PerfectSquare {
    pub fn new(content: &LetterSet) -> Result<PerfectSquare> {
        if content.is_empty() {
            return Err(Error::Square("empty content".into()));
        }
        Ok(PerfectSquare {
            letters: content.iter().copied().collect(),
        })
    }

    pub(crate) fn from_sorted(letters: Vec<Letter>) -> PerfectSquare {
        debug_assert!(letters.windows(2).all(|p| p[0] < p[1]));
        PerfectSquare { letters }
    }

    pub fn content(&self) -> LetterSet {
        self.letters.iter().copied().collect()
    }

    pub fn root(&self) -> Word {
        Word::from_letters(self.letters.clone())
    }

    pub fn word(&self) -> Word {
        self.root().squared()
    }
}

impl fmt::Display for PerfectSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.len() == 1 {
            write!(f, "{}^2", self.letters[0])
        } else {
            write!(f, "({})^2", self.root())
        }
    }
}

/// `w0 s1 w1 ... sn wn` with each block a list of perfect squares.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalWord {
    pub w0: Vec<PerfectSquare>,
    pub pairs: Vec<(Word, Vec<PerfectSquare>)>,
}

impl CanonicalWord {
    pub fn blocks(&self) -> impl Iterator<Item = &Vec<PerfectSquare>> {
        std::iter::once(&self.w0).chain(self.pairs.iter().map(|p| &p.1))
    }

    pub fn flatten(&self) -> Word {
        let mut out = Word::empty();
        for sq in &self.w0 {
            out.extend(&sq.word());
        }
        for (s, b) in &self.pairs {
            out.extend(s);
            for sq in b {
                out.extend(&sq.word());
            }
        }
        out
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.w0.iter().map(|s| s.to_string()).collect();
        for (s, b) in &self.pairs {
            parts.push(s.to_string());
            parts.extend(b.iter().map(|q| q.to_string()));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Rewrites `w` into canonical form; the trace runs from `w` to the
/// flattened result.
pub fn canonicalize(w: &Word) -> Result<(CanonicalWord, DerivationTrace)> {
    run(w, true)
}

/// Same result as [`canonicalize`] without keeping the trace.
pub fn canonical_form(w: &Word) -> Result<CanonicalWord> {
    run(w, false).map(|(c, _)| c)
}

fn run(w: &Word, record: bool) -> Result<(CanonicalWord, DerivationTrace)> {
    let mut b = Builder::new(w, record);
    for k in 0..b.block_count() {
        b.normalize_block(k)?;
    }
    b.insert_boundaries()?;
    b.finish()
}

/// Squares, merges, prunes and alphabetizes block `k` of `w`, leaving the
/// other blocks untouched. Returns the block's squares and the trace on `w`.
pub fn square_normalize(w: &Word, k: usize) -> Result<(Vec<PerfectSquare>, DerivationTrace)> {
    let blocks = decompose(w).block_count();
    if k >= blocks {
        return Err(Error::Internal(format!(
            "{w} has {blocks} blocks, not {}",
            k + 1
        )));
    }
    let mut b = Builder::new(w, true);
    b.normalize_block(k)?;
    let squares = b.squares(k);
    Ok((squares, b.into_trace()))
}

/// Adds the boundary squares a candidate satisfying the other conditions
/// is missing.
pub fn insert_boundary_squares(c: &CanonicalWord) -> Result<(CanonicalWord, DerivationTrace)> {
    let mut b = Builder::from_canonical(c, true);
    b.insert_boundaries()?;
    b.finish()
}

/// Trace from `s` to its perfect square.
pub fn alphabetize_square(s: &Square) -> Result<(PerfectSquare, DerivationTrace)> {
    let mut rw = rewrite::Rewriter::new(&s.realization(), true);
    let mut root = s.root.clone();
    build::alphabetize(&mut rw, 0, &mut root)?;
    Ok((PerfectSquare::from_sorted(root), rw.into_trace()))
}

/// Traces for `z' z -> z` and `z z' -> z` when `con(z') ⊆ con(z)`.
pub fn absorb(z_prime: &Square, z: &Square) -> Result<(DerivationTrace, DerivationTrace)> {
    if !z_prime.content().is_subset(&z.content()) {
        return Err(Error::Square(format!(
            "{} is not contained in {}",
            z_prime.realization(),
            z.realization()
        )));
    }
    let outer = z_prime.realization();
    let mut left = rewrite::Rewriter::new(&outer.concat(&z.realization()), true);
    for (i, &c) in outer.letters().iter().enumerate().rev() {
        build::absorb_left(&mut left, i, &z.root, c)?;
    }
    let mut right = rewrite::Rewriter::new(&z.realization().concat(&outer), true);
    for &c in outer.letters() {
        build::absorb_right(&mut right, 0, &z.root, c)?;
    }
    Ok((left.into_trace(), right.into_trace()))
}

#[cfg(test)]
mod tests;
