//! Words over a countable alphabet and the syntactic statistics taken over them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Start of the code range used for indexed variables (`y1`, `z3`, ...).
/// Everything below it is an ordinary Unicode scalar value.
const INDEXED_BASE: u32 = 0x20_0000;

/// A single letter. Letters are ordered by code point, which fixes the
/// "alphabetical order" used for perfect squares.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(c: char) -> Self {
        Letter(c as u32)
    }

    /// Indexed variable such as `y1`. Indexed letters sort after every
    /// ordinary letter and, within a family, by index.
    pub fn indexed(family: char, index: u16) -> Self {
        debug_assert!(family.is_ascii_lowercase());
        Letter(INDEXED_BASE + ((family as u32) << 16) + index as u32)
    }

    pub fn as_char(self) -> Option<char> {
        if self.0 < INDEXED_BASE {
            char::from_u32(self.0)
        } else {
            None
        }
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_char() {
            Some(c) => write!(f, "{c}"),
            None => {
                let rest = self.0 - INDEXED_BASE;
                let family = char::from_u32(rest >> 16).unwrap_or('?');
                write!(f, "{}{}", family, rest & 0xffff)
            }
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Letter {
    type Err = ParseError;

    /// Accepts a single lowercase letter or an indexed variable like `y12`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let head = chars
            .next()
            .ok_or_else(|| ParseError::new("empty letter"))?;
        if !head.is_ascii_lowercase() {
            return Err(ParseError::new(format!("bad letter {s:?}")));
        }
        let tail: &str = chars.as_str();
        if tail.is_empty() {
            return Ok(Letter::new(head));
        }
        let index: u16 = tail
            .parse()
            .map_err(|_| ParseError::new(format!("bad letter {s:?}")))?;
        Ok(Letter::indexed(head, index))
    }
}

pub type LetterSet = BTreeSet<Letter>;

/// An element of the free monoid. The empty word is the monoid identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, w: &Word) {
        self.0.extend_from_slice(&w.0);
    }

    /// `self` repeated twice.
    pub fn squared(&self) -> Word {
        self.concat(self)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn content(&self) -> LetterSet {
        self.0.iter().copied().collect()
    }

    pub fn multiplicity(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&l| l == x).count()
    }

    pub fn multiplicities(&self) -> BTreeMap<Letter, usize> {
        let mut m = BTreeMap::new();
        for &l in &self.0 {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    pub fn simple_letters(&self) -> LetterSet {
        self.multiplicities()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let indexed = self.0.iter().any(|l| l.as_char().is_none());
        for (i, l) in self.0.iter().enumerate() {
            if indexed && i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// `xyyx` style; `1` is the empty word. A whitespace-separated form
    /// (`x y1 y1 x`) is accepted as well so indexed variables round-trip.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(ParseError::new("empty word (use 1 for the identity)"));
        }
        if s.contains(char::is_whitespace) {
            return s.split_whitespace().map(Letter::from_str).collect();
        }
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(Letter::new(c))
                } else {
                    Err(ParseError::new(format!("bad letter {c:?} in word {s:?}")))
                }
            })
            .collect()
    }
}

/// Shorthand used throughout the tests and fixed schema tables.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// Content statistics of a single word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordProfile {
    pub content: LetterSet,
    pub sim: LetterSet,
    pub non: LetterSet,
    pub mult: BTreeMap<Letter, usize>,
}

pub fn analyze(w: &Word) -> WordProfile {
    let mult = w.multiplicities();
    let content: LetterSet = mult.keys().copied().collect();
    let sim: LetterSet = mult
        .iter()
        .filter(|&(_, &c)| c == 1)
        .map(|(&l, _)| l)
        .collect();
    let non = content.difference(&sim).copied().collect();
    WordProfile {
        content,
        sim,
        non,
        mult,
    }
}

/// Subsequence of `w` on the letters of `keep`.
pub fn restrict(w: &Word, keep: &LetterSet) -> Word {
    w.letters()
        .iter()
        .copied()
        .filter(|l| keep.contains(l))
        .collect()
}

/// Ordered pairs `xy` of simple letters that occur as adjacent factors.
pub fn fss(w: &Word) -> BTreeSet<(Letter, Letter)> {
    let sim = w.simple_letters();
    w.letters()
        .windows(2)
        .filter(|p| sim.contains(&p[0]) && sim.contains(&p[1]))
        .map(|p| (p[0], p[1]))
        .collect()
}

/// Whether every occurrence of `x` precedes every occurrence of `y` in `w`.
pub fn precedes(w: &Word, x: Letter, y: Letter) -> Result<bool, crate::Error> {
    let last_x = w.letters().iter().rposition(|&l| l == x);
    let first_y = w.letters().iter().position(|&l| l == y);
    match (last_x, first_y) {
        (Some(lx), Some(fy)) => Ok(lx < fy),
        (None, _) => Err(crate::Error::AbsentLetter(x)),
        (_, None) => Err(crate::Error::AbsentLetter(y)),
    }
}

/// `w = w0 s1 w1 ... sn wn` with simple letters in the `s` segments and
/// non-simple letters in the `w` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub w0: Word,
    pub pairs: Vec<(Word, Word)>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.pairs.len() + 1
    }

    pub fn block(&self, k: usize) -> &Word {
        if k == 0 {
            &self.w0
        } else {
            &self.pairs[k - 1].1
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Word> {
        std::iter::once(&self.w0).chain(self.pairs.iter().map(|p| &p.1))
    }

    pub fn simple_segments(&self) -> impl Iterator<Item = &Word> {
        self.pairs.iter().map(|p| &p.0)
    }

    pub fn flatten(&self) -> Word {
        let mut out = self.w0.clone();
        for (s, b) in &self.pairs {
            out.extend(s);
            out.extend(b);
        }
        out
    }
}

pub fn decompose(w: &Word) -> BlockDecomposition {
    let sim = w.simple_letters();
    let mut w0 = Word::empty();
    let mut pairs: Vec<(Word, Word)> = Vec::new();
    let mut in_simple = false;
    for &l in w.letters() {
        if sim.contains(&l) {
            if !in_simple {
                pairs.push((Word::empty(), Word::empty()));
                in_simple = true;
            }
            pairs.last_mut().unwrap().0.push(l);
        } else {
            in_simple = false;
            match pairs.last_mut() {
                Some(p) => p.1.push(l),
                None => w0.push(l),
            }
        }
    }
    BlockDecomposition { w0, pairs }
}

/// A formal equation `lhs = rhs` between words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    pub fn content(&self) -> LetterSet {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    pub fn is_balanced(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    pub fn flipped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn reversed(&self) -> Identity {
        Identity::new(self.lhs.reversed(), self.rhs.reversed())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| ParseError::new(format!("identity {s:?} has no '='")))?;
        Ok(Identity::new(l.parse()?, r.parse()?))
    }
}

pub fn ident(s: &str) -> Identity {
    s.parse().expect("valid identity literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> LetterSet {
        w(s).content()
    }

    #[test]
    fn profile_of_mixed_word() {
        let p = analyze(&w("xxxabcyxdyyefx"));
        assert_eq!(p.sim, set("abcdef"));
        assert_eq!(p.non, set("xy"));
        assert_eq!(p.mult[&Letter::new('x')], 5);
    }

    #[test]
    fn profile_of_empty_word() {
        let p = analyze(&Word::empty());
        assert!(p.content.is_empty() && p.sim.is_empty() && p.non.is_empty());
    }

    #[test]
    fn profile_counts() {
        let p = analyze(&w("xyx"));
        assert_eq!(p.mult[&Letter::new('x')], 2);
        assert_eq!(p.sim, set("y"));
    }

    #[test]
    fn restriction() {
        assert_eq!(restrict(&w("xaybx"), &set("x")), w("xx"));
        assert_eq!(restrict(&w("xaybx"), &set("xaybx")), w("xaybx"));
        let u = w("xxxabcyxdyyefx");
        assert_eq!(restrict(&u, &u.simple_letters()), w("abcdef"));
    }

    #[test]
    fn fss_examples() {
        let l = Letter::new;
        let got = fss(&w("xxxabcyxdyyefx"));
        let want: BTreeSet<_> = [(l('a'), l('b')), (l('b'), l('c')), (l('e'), l('f'))]
            .into_iter()
            .collect();
        assert_eq!(got, want);
        assert!(fss(&w("xyxy")).is_empty());
        assert_eq!(fss(&w("stu")).len(), 2);
    }

    #[test]
    fn precedence() {
        let l = Letter::new;
        assert!(precedes(&w("xxyy"), l('x'), l('y')).unwrap());
        assert!(!precedes(&w("xyx"), l('x'), l('y')).unwrap());
        assert!(precedes(&w("xxyyz"), l('x'), l('z')).unwrap());
        assert!(precedes(&w("xx"), l('x'), l('q')).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&w("xxxabcyxdyyefx"));
        assert_eq!(d.w0, w("xxx"));
        let pairs: Vec<(String, String)> = d
            .pairs
            .iter()
            .map(|(s, b)| (s.to_string(), b.to_string()))
            .collect();
        let expect = [("abc", "yx"), ("d", "yy"), ("ef", "x")];
        assert_eq!(pairs.len(), 3);
        for (got, want) in pairs.iter().zip(expect) {
            assert_eq!((got.0.as_str(), got.1.as_str()), want);
        }

        let d = decompose(&w("stu"));
        assert!(d.w0.is_empty());
        assert_eq!(d.pairs, vec![(w("stu"), Word::empty())]);

        let d = decompose(&w("xyx"));
        assert_eq!(d.w0, w("x"));
        assert_eq!(d.pairs, vec![(w("y"), w("x"))]);

        let d = decompose(&Word::empty());
        assert!(d.w0.is_empty() && d.pairs.is_empty());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("1"), Word::empty());
        assert_eq!(Word::empty().to_string(), "1");
        assert!("xY".parse::<Word>().is_err());
        let v = Word::from_letters(vec![
            Letter::new('x'),
            Letter::indexed('y', 1),
            Letter::indexed('y', 1),
            Letter::new('x'),
        ]);
        assert_eq!(v.to_string(), "x y1 y1 x");
        assert_eq!(v.to_string().parse::<Word>().unwrap(), v);
        assert_eq!(ident("xyx = xxyx").rhs, w("xxyx"));
        assert!(Letter::new('z') < Letter::indexed('a', 0));
    }
}
