//! The rewriting procedure behind `canonicalize`, phase by phase.
//!
//! Every change to the word goes through `Rewriter::apply`, so the recorded
//! trace is a derivation from the basis. The block structure kept alongside
//! the word is re-rendered and compared after each phase.

use crate::basis::{InstanceRef, SchemaTag};
use crate::error::{Error, Result};
use crate::word::{decompose, Letter, LetterSet, Word};

use super::rewrite::{DerivationTrace, Direction, Rewriter};
use super::{CanonicalWord, PerfectSquare};

use Direction::{Backward as Bwd, Forward as Fwd};

fn v(c: char) -> Letter {
    Letter::new(c)
}

fn e1(pair: usize) -> InstanceRef {
    InstanceRef::new(SchemaTag::E1, 0, pair)
}

fn e2(pair: usize) -> InstanceRef {
    InstanceRef::new(SchemaTag::E2, 0, pair)
}

fn e3(pair: usize) -> InstanceRef {
    InstanceRef::new(SchemaTag::E3, 0, pair)
}

fn doubled(r: &[Letter]) -> Vec<Letter> {
    let mut out = r.to_vec();
    out.extend_from_slice(r);
    out
}

fn concat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

/// `c Z -> Z` for `Z = (p c q)^2` starting at `pos + 1`.
pub(crate) fn absorb_left(rw: &mut Rewriter, pos: usize, root: &[Letter], c: Letter) -> Result<()> {
    let i = root
        .iter()
        .position(|&l| l == c)
        .ok_or_else(|| Error::Square(format!("{c} is not in the square")))?;
    let (p, q) = (&root[..i], &root[i + 1..]);
    let (x, y) = (v('x'), v('y'));
    let cs = [c];
    match (p.is_empty(), q.is_empty()) {
        (true, true) => rw.apply(pos, e1(0), &[(x, &cs)], Bwd),
        (true, false) => rw.apply(pos, e1(1), &[(x, &cs), (y, q)], Bwd),
        (false, _) => {
            let cq = concat(&cs, q);
            rw.apply(pos + 1, e1(1), &[(x, p), (y, &cq)], Fwd)?;
            for pair in 0..4 {
                rw.apply(pos, e2(pair), &[(x, &cs), (y, p)], Fwd)?;
            }
            let pc = concat(p, &cs);
            if q.is_empty() {
                rw.apply(pos, e1(0), &[(x, &pc)], Bwd)
            } else {
                rw.apply(pos, e1(1), &[(x, &pc), (y, q)], Bwd)
            }
        }
    }
}

/// `Z c -> Z` for `Z = (p c q)^2` starting at `pos`.
pub(crate) fn absorb_right(
    rw: &mut Rewriter,
    pos: usize,
    root: &[Letter],
    c: Letter,
) -> Result<()> {
    let i = root
        .iter()
        .position(|&l| l == c)
        .ok_or_else(|| Error::Square(format!("{c} is not in the square")))?;
    let (p, q) = (&root[..i], &root[i + 1..]);
    let (x, y) = (v('x'), v('y'));
    let cs = [c];
    if q.is_empty() {
        if p.is_empty() {
            return rw.apply(pos, e1(0), &[(x, &cs)], Bwd);
        }
        let at = pos + p.len();
        rw.apply(at, e1(2), &[(x, &cs), (y, p)], Bwd)?;
        return rw.apply(at, e1(1), &[(x, &cs), (y, p)], Bwd);
    }
    let pc = concat(p, &cs);
    let at = pos + p.len() + 1;
    rw.apply(at, e1(1), &[(x, q), (y, &pc)], Fwd)?;
    rw.apply(at, e1(2), &[(x, q), (y, &pc)], Fwd)?;
    rw.apply(
        pos + 2 * p.len() + q.len() + 1,
        e2(0),
        &[(x, &cs), (y, q)],
        Fwd,
    )?;
    let cq = concat(&cs, q);
    if p.is_empty() {
        rw.apply(pos, e1(0), &[(x, &cq)], Bwd)
    } else {
        rw.apply(pos + p.len(), e1(2), &[(x, &cq), (y, p)], Bwd)?;
        rw.apply(pos + p.len(), e1(1), &[(x, &cq), (y, p)], Bwd)
    }
}

/// `Z -> c Z` at `pos`.
pub(crate) fn emit_left(rw: &mut Rewriter, pos: usize, root: &[Letter], c: Letter) -> Result<()> {
    let mut scratch = Rewriter::new(&Word::from_letters(concat(&[c], &doubled(root))), true);
    absorb_left(&mut scratch, 0, root, c)?;
    rw.apply_inverse_of(pos, scratch.steps())
}

/// `Z -> Z c` at `pos`.
pub(crate) fn emit_right(rw: &mut Rewriter, pos: usize, root: &[Letter], c: Letter) -> Result<()> {
    let mut scratch = Rewriter::new(&Word::from_letters(concat(&doubled(root), &[c])), true);
    absorb_right(&mut scratch, 0, root, c)?;
    rw.apply_inverse_of(pos, scratch.steps())
}

/// Swaps `root[i]` and `root[i + 1]` in the square at `pos`.
pub(crate) fn transpose(
    rw: &mut Rewriter,
    pos: usize,
    root: &mut [Letter],
    i: usize,
) -> Result<()> {
    let (a, b) = ([root[i]], [root[i + 1]]);
    let (x, y, t) = (v('x'), v('y'), v('t'));
    if root.len() == 2 {
        for pair in 1..4 {
            rw.apply(pos, e2(pair), &[(x, &a), (y, &b)], Fwd)?;
        }
    } else {
        let gap = concat(&root[i + 2..], &root[..i]);
        rw.apply(
            pos + i,
            InstanceRef::new(SchemaTag::E5, 0, 0),
            &[(x, &a), (y, &b), (t, &gap)],
            Fwd,
        )?;
        rw.apply(
            pos + i,
            InstanceRef::new(SchemaTag::E6, 0, 0),
            &[(x, &b), (y, &a), (t, &gap)],
            Bwd,
        )?;
    }
    root.swap(i, i + 1);
    Ok(())
}

/// Bubble sort of the square's root by adjacent transpositions.
pub(crate) fn alphabetize(rw: &mut Rewriter, pos: usize, root: &mut [Letter]) -> Result<()> {
    for end in (1..root.len()).rev() {
        for i in 0..end {
            if root[i] > root[i + 1] {
                transpose(rw, pos, root, i)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Block {
    /// Letters of a block that has not been squared yet.
    raw: Option<Vec<Letter>>,
    roots: Vec<Vec<Letter>>,
}

impl Block {
    fn len(&self) -> usize {
        match &self.raw {
            Some(r) => r.len(),
            None => self.roots.iter().map(|r| 2 * r.len()).sum(),
        }
    }

    fn content(&self) -> LetterSet {
        match &self.raw {
            Some(r) => r.iter().copied().collect(),
            None => self.roots.iter().flatten().copied().collect(),
        }
    }
}

/// Which derivation inserts a boundary square between two adjacent squares.
#[derive(Clone, Copy, Debug)]
enum Boundary {
    /// `x` only in block `g`, `y` in a different block `h`.
    Split { g: usize, h: usize },
    /// `x` and `y` together in another block `g`.
    Shared { g: usize },
}

pub(crate) struct Builder {
    rw: Rewriter,
    simple_set: LetterSet,
    simple: Vec<Word>,
    blocks: Vec<Block>,
}

impl Builder {
    pub fn new(w: &Word, record: bool) -> Self {
        let d = decompose(w);
        let mut blocks = vec![Block {
            raw: Some(d.w0.letters().to_vec()),
            roots: Vec::new(),
        }];
        let mut simple = Vec::new();
        for (s, b) in &d.pairs {
            simple.push(s.clone());
            blocks.push(Block {
                raw: Some(b.letters().to_vec()),
                roots: Vec::new(),
            });
        }
        Builder {
            rw: Rewriter::new(w, record),
            simple_set: w.simple_letters(),
            simple,
            blocks,
        }
    }

    /// Starts from an already squared candidate.
    pub fn from_canonical(c: &CanonicalWord, record: bool) -> Self {
        let to_block = |sq: &Vec<PerfectSquare>| Block {
            raw: None,
            roots: sq.iter().map(|s| s.root().into_letters()).collect(),
        };
        let w = c.flatten();
        let mut blocks = vec![to_block(&c.w0)];
        let mut simple = Vec::new();
        for (s, b) in &c.pairs {
            simple.push(s.clone());
            blocks.push(to_block(b));
        }
        Builder {
            rw: Rewriter::new(&w, record),
            simple_set: w.simple_letters(),
            simple,
            blocks,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn block_start(&self, k: usize) -> usize {
        (0..k)
            .map(|i| self.blocks[i].len() + self.simple[i].len())
            .sum()
    }

    fn square_start(&self, k: usize, j: usize) -> usize {
        self.block_start(k)
            + self.blocks[k].roots[..j]
                .iter()
                .map(|r| 2 * r.len())
                .sum::<usize>()
    }

    fn render(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                out.extend_from_slice(self.simple[k - 1].letters());
            }
            match &b.raw {
                Some(r) => out.extend_from_slice(r),
                None => b.roots.iter().for_each(|r| out.extend(doubled(r))),
            }
        }
        out
    }

    fn check_sync(&self, phase: &str) -> Result<()> {
        if self.render() != self.rw.word() {
            return Err(Error::Internal(format!(
                "block structure out of step with the word after {phase}"
            )));
        }
        Ok(())
    }

    /// Current `[start, end)` of every block, read off the word itself.
    fn block_ranges(&self) -> Vec<(usize, usize)> {
        let w = self.rw.word();
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut start = 0;
        let mut i = 0;
        while i < w.len() {
            if self.simple_set.contains(&w[i]) {
                out.push((start, i));
                while i < w.len() && self.simple_set.contains(&w[i]) {
                    i += 1;
                }
                start = i;
            } else {
                i += 1;
            }
        }
        out.push((start, w.len()));
        out
    }

    /// Turns every maximal run of a letter in block `k` into its square.
    pub fn square_letters(&mut self, k: usize) -> Result<()> {
        let Some(raw) = self.blocks[k].raw.clone() else {
            return Ok(());
        };
        let (x, y) = (v('x'), v('y'));
        let start = self.block_start(k);
        let mut end = start + raw.len();
        let mut roots = Vec::new();
        let mut i = start;
        while i < end {
            let w = self.rw.word();
            let c = w[i];
            let mut j = i;
            while j < end && w[j] == c {
                j += 1;
            }
            let cs = [c];
            match j - i {
                1 => {
                    let next = w[j..].iter().position(|&d| d == c).map(|o| j + o);
                    if let Some(q) = next {
                        let u = w[j..q].to_vec();
                        self.rw.apply(i, e1(1), &[(x, &cs), (y, &u)], Fwd)?;
                    } else {
                        let p = w[..i].iter().rposition(|&d| d == c).ok_or_else(|| {
                            Error::Internal(format!("{c} occurs once but sits in a block"))
                        })?;
                        let u = w[p + 1..i].to_vec();
                        self.rw.apply(p, e1(1), &[(x, &cs), (y, &u)], Fwd)?;
                        self.rw.apply(p, e1(2), &[(x, &cs), (y, &u)], Fwd)?;
                    }
                    end += 1;
                }
                2 => {}
                r => {
                    for _ in 2..r {
                        self.rw.apply(i, e1(0), &[(x, &cs)], Bwd)?;
                    }
                    end -= r - 2;
                }
            }
            roots.push(vec![c]);
            i += 2;
        }
        self.blocks[k] = Block { raw: None, roots };
        self.check_sync("squaring")
    }

    /// Merging, deletion of contained squares, and alphabetization.
    pub fn normalize_block(&mut self, k: usize) -> Result<()> {
        self.square_letters(k)?;
        while let Some((l, g, z)) = self.find_gap(k) {
            self.merge(k, l, g, z)?;
        }
        while let Some((j, into_next)) = self.find_contained(k) {
            self.delete(k, j, into_next)?;
        }
        self.check_sync("normalization")
    }

    /// First `(l, g, z)` with `z` in squares `l < g`, absent in between.
    fn find_gap(&self, k: usize) -> Option<(usize, usize, Letter)> {
        let roots = &self.blocks[k].roots;
        for (l, r) in roots.iter().enumerate() {
            for &z in r {
                if let Some(off) = roots[l + 1..].iter().position(|s| s.contains(&z)) {
                    if off > 0 {
                        return Some((l, l + 1 + off, z));
                    }
                }
            }
        }
        None
    }

    fn merge(&mut self, k: usize, l: usize, g: usize, z: Letter) -> Result<()> {
        let (x, y) = (v('x'), v('y'));
        let zs = [z];
        let rl = self.blocks[k].roots[l].clone();
        let rg = self.blocks[k].roots[g].clone();
        let pl = self.square_start(k, l);
        let pg = self.square_start(k, g);
        emit_right(&mut self.rw, pl, &rl, z)?;
        emit_left(&mut self.rw, pg + 1, &rg, z)?;
        let m0 = pl + 2 * rl.len();
        let mids: Vec<Vec<Letter>> = self.blocks[k].roots[l + 1..g].to_vec();
        let n = mids.len();
        if n == 1 {
            self.rw.apply(m0, e2(0), &[(x, &zs), (y, &mids[0])], Fwd)?;
        } else {
            let ys: Vec<Letter> = (1..=n as u16).map(|i| Letter::indexed('y', i)).collect();
            let mut theta: Vec<(Letter, &[Letter])> = vec![(x, &zs)];
            theta.extend(ys.iter().copied().zip(mids.iter().map(|r| r.as_slice())));
            self.rw
                .apply(m0, InstanceRef::new(SchemaTag::E4, n, 0), &theta, Fwd)?;
            // z r1^2 z r2^2 z ... z rn^2 z: double every inner z
            let offsets: Vec<usize> = mids
                .iter()
                .scan(m0, |acc, r| {
                    let here = *acc;
                    *acc += 1 + 2 * r.len();
                    Some(here)
                })
                .collect();
            for j in (1..n).rev() {
                let sq = doubled(&mids[j]);
                self.rw
                    .apply(offsets[j], e1(1), &[(x, &zs), (y, &sq)], Fwd)?;
            }
            let mut pos = m0;
            for r in &mids {
                self.rw.apply(pos, e2(0), &[(x, &zs), (y, r)], Fwd)?;
                pos += 2 * (1 + r.len());
            }
        }
        for j in l + 1..g {
            let mut root = concat(&zs, &self.blocks[k].roots[j]);
            let pos = self.square_start(k, j);
            self.blocks[k].roots[j] = root.clone();
            alphabetize(&mut self.rw, pos, &mut root)?;
            self.blocks[k].roots[j] = root;
        }
        Ok(())
    }

    /// First square contained in a neighbour; `true` when the right one.
    fn find_contained(&self, k: usize) -> Option<(usize, bool)> {
        let roots = &self.blocks[k].roots;
        let within = |a: &Vec<Letter>, b: &Vec<Letter>| a.iter().all(|l| b.contains(l));
        for j in 0..roots.len() {
            if j + 1 < roots.len() && within(&roots[j], &roots[j + 1]) {
                return Some((j, true));
            }
            if j > 0 && within(&roots[j], &roots[j - 1]) {
                return Some((j, false));
            }
        }
        None
    }

    fn delete(&mut self, k: usize, j: usize, into_next: bool) -> Result<()> {
        let letters = doubled(&self.blocks[k].roots[j]);
        if into_next {
            let next = self.blocks[k].roots[j + 1].clone();
            let pos = self.square_start(k, j);
            for (idx, &c) in letters.iter().enumerate().rev() {
                absorb_left(&mut self.rw, pos + idx, &next, c)?;
            }
        } else {
            let prev = self.blocks[k].roots[j - 1].clone();
            let pos = self.square_start(k, j - 1);
            for &c in &letters {
                absorb_right(&mut self.rw, pos, &prev, c)?;
            }
        }
        self.blocks[k].roots.remove(j);
        Ok(())
    }

    fn classify(&self, k: usize, x: Letter, y: Letter, contents: &[LetterSet]) -> Option<Boundary> {
        let n = contents.len();
        for g in (0..n).filter(|&g| contents[g].contains(&x)) {
            for h in (0..n).filter(|&h| contents[h].contains(&y)) {
                if (g < h && h < k) || (k < g && g < h) || (h < k && k < g) {
                    return Some(Boundary::Split { g, h });
                }
            }
        }
        (0..n)
            .find(|&g| g != k && contents[g].contains(&x) && contents[g].contains(&y))
            .map(|g| Boundary::Shared { g })
    }

    fn find_boundary(&self) -> Option<(usize, usize, Letter, Letter, Boundary)> {
        let contents: Vec<LetterSet> = self.blocks.iter().map(Block::content).collect();
        for (k, b) in self.blocks.iter().enumerate() {
            for l in 1..b.roots.len() {
                let (prev, cur) = (&b.roots[l - 1], &b.roots[l]);
                for &x in prev.iter().filter(|x| !cur.contains(x)) {
                    for &y in cur.iter().filter(|y| !prev.contains(y)) {
                        if let Some(case) = self.classify(k, x, y, &contents) {
                            return Some((k, l, x, y, case));
                        }
                    }
                }
            }
        }
        None
    }

    /// Inserts boundary squares until none is missing.
    pub fn insert_boundaries(&mut self) -> Result<()> {
        let letters = self.rw.word().iter().copied().collect::<LetterSet>().len();
        let budget = (letters * letters * self.blocks.len()).max(1);
        let mut rounds = 0;
        while let Some((k, l, x, y, case)) = self.find_boundary() {
            rounds += 1;
            if rounds > budget {
                return Err(Error::FixpointBudget(budget));
            }
            self.insert_pair(k, l, x, y, case)?;
            self.normalize_block(k)?;
        }
        Ok(())
    }

    fn insert_pair(
        &mut self,
        k: usize,
        l: usize,
        x: Letter,
        y: Letter,
        case: Boundary,
    ) -> Result<()> {
        let ra = self.blocks[k].roots[l - 1].clone();
        let rb = self.blocks[k].roots[l].clone();
        let pa = self.square_start(k, l - 1);
        let copies = match case {
            Boundary::Split { .. } => 1,
            Boundary::Shared { .. } => 2,
        };
        for _ in 0..copies {
            emit_right(&mut self.rw, pa, &ra, x)?;
        }
        let pb = pa + 2 * ra.len() + copies;
        for i in 0..copies {
            emit_left(&mut self.rw, pb + i, &rb, y)?;
        }
        // the `x y` factor that becomes `x y x y`
        let mid = pa + 2 * ra.len() + copies - 1;
        match case {
            Boundary::Split { g, h } => self.split_boundary(k, g, h, x, y, mid)?,
            Boundary::Shared { g } => self.shared_boundary(k, g, x, y, mid)?,
        }
        self.blocks[k].roots.insert(l, vec![x, y]);
        let pos = self.square_start(k, l);
        let mut root = vec![x, y];
        alphabetize(&mut self.rw, pos, &mut root)?;
        self.blocks[k].roots[l] = root;
        self.check_sync("boundary insertion")
    }

    fn first_in(&self, range: (usize, usize), c: Letter) -> Result<usize> {
        self.rw.word()[range.0..range.1]
            .iter()
            .position(|&d| d == c)
            .map(|o| range.0 + o)
            .ok_or_else(|| Error::Internal(format!("{c} missing from its block")))
    }

    fn split_boundary(
        &mut self,
        k: usize,
        g: usize,
        h: usize,
        x: Letter,
        y: Letter,
        mid: usize,
    ) -> Result<()> {
        let ranges = self.block_ranges();
        let xg = self.first_in(ranges[g], x)?;
        let yh = self.first_in(ranges[h], y)?;
        let (sx, sy, st, ss) = (v('x'), v('y'), v('t'), v('s'));
        let (xs, ys) = ([x], [y]);
        let w = self.rw.word().to_vec();
        if k < g && g < h {
            // x y t x s y -> x y x y t x s y
            let (t, s) = (&w[mid + 2..xg], &w[xg + 1..yh]);
            self.rw
                .apply(mid, e3(0), &[(sx, &xs), (sy, &ys), (st, t), (ss, s)], Fwd)
        } else if h < k && k < g {
            // y t x y s x -> y t (x y)^2 s x, the second identity read backwards
            let (t, s) = (&w[yh + 1..mid], &w[mid + 2..xg]);
            self.rw
                .apply(yh, e3(1), &[(sx, &ys), (sy, &xs), (st, t), (ss, s)], Bwd)
        } else {
            // x t y s x y -> x t y s x y x y
            let (t, s) = (&w[xg + 1..yh], &w[yh + 1..mid]);
            self.rw
                .apply(xg, e3(2), &[(sx, &xs), (sy, &ys), (st, t), (ss, s)], Fwd)
        }
    }

    /// Block `k` reads `... x x y y ...` with the middle `x y` at `mid`.
    /// A factor `x Z.. y` (or `y Z.. x`) with only squares inside is opened in
    /// block `g`, one instance swaps the middle pair, and block `g` is closed
    /// again.
    fn shared_boundary(
        &mut self,
        k: usize,
        g: usize,
        x: Letter,
        y: Letter,
        mid: usize,
    ) -> Result<()> {
        let roots = self.blocks[g].roots.clone();
        let start = self.block_ranges()[g].0;
        let off = |j: usize| start + roots[..j].iter().map(|r| 2 * r.len()).sum::<usize>();
        let both = roots.iter().position(|r| r.contains(&x) && r.contains(&y));
        let first_x = roots.iter().position(|r| r.contains(&x));
        let first_y = roots.iter().position(|r| r.contains(&y));
        // (position of the first letter of the factor, of its last letter,
        //  the squares between, whether the factor starts with x)
        let (p1, p2, inner, straight) = if let Some(a) = both {
            emit_right(&mut self.rw, off(a), &roots[a], y)?;
            emit_right(&mut self.rw, off(a), &roots[a], x)?;
            let p1 = off(a) + 2 * roots[a].len();
            (p1, p1 + 1, Vec::new(), true)
        } else {
            let (a, b) = match (first_x, first_y) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Internal("shared letters missing".into())),
            };
            let (lo, hi, lo_c, hi_c) = if a < b { (a, b, x, y) } else { (b, a, y, x) };
            emit_right(&mut self.rw, off(lo), &roots[lo], lo_c)?;
            emit_left(&mut self.rw, off(hi) + 1, &roots[hi], hi_c)?;
            let p1 = off(lo) + 2 * roots[lo].len();
            (p1, off(hi) + 1, roots[lo + 1..hi].to_vec(), a < b)
        };
        let mid = if g < k { mid + 2 } else { mid };
        let (sx, sy, st) = (v('x'), v('y'), v('t'));
        let (e1s, e2s) = if straight { ([x], [y]) } else { ([y], [x]) };
        let zs: Vec<Letter> = (1..=inner.len() as u16)
            .map(|i| Letter::indexed('z', i))
            .collect();
        let w = self.rw.word().to_vec();
        let dir = if straight { Fwd } else { Bwd };
        let mut theta: Vec<(Letter, &[Letter])> = vec![(sx, &e1s), (sy, &e2s)];
        theta.extend(zs.iter().copied().zip(inner.iter().map(|r| r.as_slice())));
        if g > k {
            theta.push((st, &w[mid + 2..p1]));
            self.rw.apply(
                mid,
                InstanceRef::new(SchemaTag::E5, inner.len(), 0),
                &theta,
                dir,
            )?;
        } else {
            theta.push((st, &w[p2 + 1..mid]));
            self.rw.apply(
                p1,
                InstanceRef::new(SchemaTag::E6, inner.len(), 0),
                &theta,
                dir,
            )?;
        }
        // close block g again
        let start = self.block_ranges()[g].0;
        let off = |j: usize| start + roots[..j].iter().map(|r| 2 * r.len()).sum::<usize>();
        if let Some(a) = both {
            absorb_right(&mut self.rw, off(a), &roots[a], x)?;
            absorb_right(&mut self.rw, off(a), &roots[a], y)
        } else {
            let (a, b) = (first_x.unwrap(), first_y.unwrap());
            let (lo, hi, lo_c, hi_c) = if a < b { (a, b, x, y) } else { (b, a, y, x) };
            absorb_right(&mut self.rw, off(lo), &roots[lo], lo_c)?;
            absorb_left(&mut self.rw, off(hi), &roots[hi], hi_c)
        }
    }

    pub fn squares(&self, k: usize) -> Vec<PerfectSquare> {
        self.blocks[k]
            .roots
            .iter()
            .map(|r| PerfectSquare::from_sorted(r.clone()))
            .collect()
    }

    pub fn finish(self) -> Result<(CanonicalWord, DerivationTrace)> {
        if self.blocks.iter().any(|b| b.raw.is_some()) {
            return Err(Error::Internal("unsquared block left".into()));
        }
        let cw = CanonicalWord {
            w0: self.squares(0),
            pairs: (1..self.blocks.len())
                .map(|k| (self.simple[k - 1].clone(), self.squares(k)))
                .collect(),
        };
        Ok((cw, self.rw.into_trace()))
    }

    pub fn into_trace(self) -> DerivationTrace {
        self.rw.into_trace()
    }
}
