//! Deciding identities of the variety.
//!
//! `decide` compares canonical forms after a cheap syntactic pre-check;
//! `oracle_decide` substitutes exhaustively into `A1` and `B1`. The
//! differential test runs both over a corpus of word pairs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonicalize, CanonicalWord, DerivationTrace};
use crate::error::{Error, Result};
use crate::monoid::{catalog, satisfies, Assignment, Monoid, SatisfactionMode, Witness};
use crate::word::{decompose, fss, restrict, Identity, Letter, Word};

/// Default number of distinct letters the oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

/// Necessary condition violated by a failing identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectKind {
    Content,
    SimpleLetters,
    SimpleProjection,
    Fss,
    BlockContent,
}

impl fmt::Display for RejectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectKind::Content => "content",
            RejectKind::SimpleLetters => "simple-letters",
            RejectKind::SimpleProjection => "simple-projection",
            RejectKind::Fss => "fss",
            RejectKind::BlockContent => "block-content",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    CanonicalEqual,
    /// Passed the syntactic checks but the canonical forms differ.
    CanonicalDiffer,
    SyntacticReject(RejectKind),
    Oracle,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::CanonicalEqual => f.write_str("canonical-equal"),
            Reason::CanonicalDiffer => f.write_str("canonical-differ"),
            Reason::SyntacticReject(k) => write!(f, "syntactic-reject({k})"),
            Reason::Oracle => f.write_str("oracle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Derivations from each side to its canonical form.
    Traces {
        lhs: DerivationTrace,
        rhs: DerivationTrace,
        lhs_form: CanonicalWord,
        rhs_form: CanonicalWord,
    },
    /// A failing substitution into `A1 x B1`.
    Witness(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub reason: Reason,
    pub certificate: Option<Certificate>,
}

impl Decision {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// First necessary condition for `u = v` that fails, in a fixed order:
/// content, simple letters, projection onto simple letters, adjacent simple
/// pairs, then block count and per-block content.
pub fn fast_reject(u: &Word, v: &Word) -> Option<RejectKind> {
    if u.content() != v.content() {
        return Some(RejectKind::Content);
    }
    let sim = u.simple_letters();
    if sim != v.simple_letters() {
        return Some(RejectKind::SimpleLetters);
    }
    if restrict(u, &sim) != restrict(v, &sim) {
        return Some(RejectKind::SimpleProjection);
    }
    if fss(u) != fss(v) {
        return Some(RejectKind::Fss);
    }
    let (du, dv) = (decompose(u), decompose(v));
    if du.block_count() != dv.block_count()
        || du
            .blocks()
            .zip(dv.blocks())
            .any(|(a, b)| a.content() != b.content())
    {
        return Some(RejectKind::BlockContent);
    }
    None
}

/// Decides `u = v` in the variety by comparing canonical forms.
pub fn decide(u: &Word, v: &Word) -> Result<Decision> {
    if let Some(kind) = fast_reject(u, v) {
        return Ok(Decision {
            verdict: Verdict::Fails,
            reason: Reason::SyntacticReject(kind),
            certificate: None,
        });
    }
    let (cu, tu) = canonicalize(u)?;
    let (cv, tv) = canonicalize(v)?;
    let (verdict, reason) = if cu == cv {
        (Verdict::Holds, Reason::CanonicalEqual)
    } else {
        (Verdict::Fails, Reason::CanonicalDiffer)
    };
    Ok(Decision {
        verdict,
        reason,
        certificate: Some(Certificate::Traces {
            lhs: tu,
            rhs: tv,
            lhs_form: cu,
            rhs_form: cv,
        }),
    })
}

pub fn oracle_decide(u: &Word, v: &Word) -> Result<Decision> {
    oracle_decide_with_cap(u, v, DEFAULT_ORACLE_CAP)
}

/// Exhaustive check in `A1` and in `B1`; a failing substitution in one
/// factor is paired with the identity of the other.
pub fn oracle_decide_with_cap(u: &Word, v: &Word, cap: usize) -> Result<Decision> {
    let id = Identity::new(u.clone(), v.clone());
    let letters = id.content().len();
    if letters > cap {
        return Err(Error::OracleCap(letters, cap));
    }
    let (a1, b1) = (catalog("A1")?, catalog("B1")?);
    for (first, m) in [(true, &a1), (false, &b1)] {
        if let Some(w) = satisfies(m, &id, SatisfactionMode::Exhaustive)?.witness() {
            return Ok(Decision {
                verdict: Verdict::Fails,
                reason: Reason::Oracle,
                certificate: Some(Certificate::Witness(lift(&a1, &b1, w, first))),
            });
        }
    }
    Ok(Decision {
        verdict: Verdict::Holds,
        reason: Reason::Oracle,
        certificate: None,
    })
}

fn lift(a1: &Monoid, b1: &Monoid, w: &Witness, in_first: bool) -> Witness {
    let pair = |e| {
        if in_first {
            a1.pair_index(b1, e, b1.one().expect("B1 has an identity"))
        } else {
            a1.pair_index(b1, a1.one().expect("A1 has an identity"), e)
        }
    };
    Witness {
        assignment: w
            .assignment
            .iter()
            .map(|(&l, &e)| (l, pair(e)))
            .collect::<Assignment>(),
        lhs_value: pair(w.lhs_value),
        rhs_value: pair(w.rhs_value),
    }
}

/// The letters `x, y, z, t, s, u, ...` used by generated words.
pub fn alphabet(n: usize) -> Vec<Letter> {
    "xyztsuvw"
        .chars()
        .chain(('a'..='r').rev())
        .take(n)
        .map(Letter::new)
        .collect()
}

/// Every word over `letters` of length at most `max_len`, the empty word first.
pub fn all_words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = frontier
            .iter()
            .flat_map(|p| {
                letters.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_word(rng: &mut impl Rng, letters: &[Letter], len: usize) -> Word {
    (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect()
}

/// One to three random edits: duplicate, delete, swap adjacent, or replace a
/// letter. The result is kept within `max_len`.
fn mutate(rng: &mut impl Rng, u: &Word, letters: &[Letter], max_len: usize) -> Word {
    let mut cur = u.letters().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let n = cur.len();
        match rng.gen_range(0..4) {
            0 if n > 0 && n < max_len => {
                let i = rng.gen_range(0..n);
                cur.insert(i, cur[i]);
            }
            1 if n > 0 => {
                cur.remove(rng.gen_range(0..n));
            }
            2 if n > 1 => {
                let i = rng.gen_range(0..n - 1);
                cur.swap(i, i + 1);
            }
            3 if n > 0 => {
                let i = rng.gen_range(0..n);
                cur[i] = letters[rng.gen_range(0..letters.len())];
            }
            _ => {}
        }
    }
    Word::from_letters(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffConfig {
    /// Alphabet size of the exhaustive sweep.
    pub letters: usize,
    pub max_len: usize,
    pub random: usize,
    pub seed: u64,
    /// Alphabet sizes and length bound for the random pairs.
    pub random_letters: (usize, usize),
    pub random_max_len: usize,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig {
            letters: 2,
            max_len: 6,
            random: 10_000,
            seed: 0x5eed,
            random_letters: (3, 4),
            random_max_len: 8,
        }
    }
}

/// The exhaustive unordered pairs (equal words included) followed by the
/// seeded random pairs. Half the random pairs are independent words, half
/// are a word and a small mutation of it.
pub fn pair_corpus(cfg: &DiffConfig) -> Vec<(Word, Word)> {
    let words = all_words(&alphabet(cfg.letters), cfg.max_len);
    let mut out = Vec::new();
    for i in 0..words.len() {
        for j in i..words.len() {
            out.push((words[i].clone(), words[j].clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.random_letters;
    for i in 0..cfg.random {
        let letters = alphabet(rng.gen_range(lo..=hi));
        let len = rng.gen_range(0..=cfg.random_max_len);
        let u = random_word(&mut rng, &letters, len);
        let v = if i % 2 == 0 {
            let len = rng.gen_range(0..=cfg.random_max_len);
            random_word(&mut rng, &letters, len)
        } else {
            mutate(&mut rng, &u, &letters, cfg.random_max_len)
        };
        out.push((u, v));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub lhs: Word,
    pub rhs: Word,
    pub decided: Verdict,
    pub reason: Reason,
    pub oracle: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub pairs: usize,
    pub holds: usize,
    pub disagreements: Vec<Disagreement>,
    pub errors: Vec<(Word, Word, String)>,
}

impl DiffReport {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }

    fn merge(mut self, other: DiffReport) -> DiffReport {
        self.pairs += other.pairs;
        self.holds += other.holds;
        self.disagreements.extend(other.disagreements);
        self.errors.extend(other.errors);
        self
    }
}

fn compare(u: &Word, v: &Word) -> DiffReport {
    let mut r = DiffReport {
        pairs: 1,
        ..DiffReport::default()
    };
    match (decide(u, v), oracle_decide(u, v)) {
        (Ok(d), Ok(o)) => {
            if o.holds() {
                r.holds = 1;
            }
            if d.verdict != o.verdict {
                r.disagreements.push(Disagreement {
                    lhs: u.clone(),
                    rhs: v.clone(),
                    decided: d.verdict,
                    reason: d.reason,
                    oracle: o.verdict,
                    witness: match o.certificate {
                        Some(Certificate::Witness(w)) => Some(w),
                        _ => None,
                    },
                });
            }
        }
        (Err(e), _) | (_, Err(e)) => r.errors.push((u.clone(), v.clone(), e.to_string())),
    }
    r
}

/// Runs `decide` and `oracle_decide` on every pair. Findings come back in
/// corpus order regardless of scheduling.
pub fn differential_test(pairs: &[(Word, Word)]) -> DiffReport {
    pairs
        .par_iter()
        .map(|(u, v)| compare(u, v))
        .reduce(DiffReport::default, DiffReport::merge)
}
