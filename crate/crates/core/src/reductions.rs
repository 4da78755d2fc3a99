//! Reductions between words: letter projections checked on one-dimensional
//! grids, the surgery that makes a grid alternate between two letter classes,
//! and letter repetition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Grid, Shape};
use crate::word::{c1, construct_pal, construct_rep, profile, Word};
use crate::Rational;

/// A letter relabeling. Letters of the source alphabet that are not named
/// map to themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    mapping: BTreeMap<u8, u8>,
}

impl LetterMap {
    pub fn identity(alphabet: &[u8]) -> LetterMap {
        LetterMap { mapping: alphabet.iter().map(|&a| (a, a)).collect() }
    }

    /// Explicit pairs, completed by the identity on `alphabet`.
    pub fn new(pairs: impl IntoIterator<Item = (u8, u8)>, alphabet: &[u8]) -> Result<LetterMap> {
        let mut mapping = BTreeMap::new();
        for (from, to) in pairs {
            for b in [from, to] {
                if !b.is_ascii_uppercase() {
                    return Err(Error::InvalidSymbol(b as char));
                }
            }
            if let Some(prev) = mapping.insert(from, to) {
                if prev != to {
                    return Err(Error::parse(
                        1,
                        format!("letter {} mapped to both {} and {}", from as char, prev as char, to as char),
                    ));
                }
            }
        }
        for &a in alphabet {
            mapping.entry(a).or_insert(a);
        }
        Ok(LetterMap { mapping })
    }

    /// Comma-separated `X:Y` pairs, for example `C:B,T:B`.
    pub fn parse(text: &str, alphabet: &[u8]) -> Result<LetterMap> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (from, to) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(1, format!("expected `X:Y`, found `{item}`")))?;
            let letter = |s: &str| match s.trim().as_bytes() {
                [b] => Ok(*b),
                _ => Err(Error::parse(1, format!("expected a single letter, found `{s}`"))),
            };
            pairs.push((letter(from)?, letter(to)?));
        }
        LetterMap::new(pairs, alphabet)
    }

    pub fn get(&self, letter: u8) -> Option<u8> {
        self.mapping.get(&letter).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.mapping.iter().map(|(&a, &b)| (a, b))
    }
}

impl fmt::Display for LetterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs().map(|(a, b)| format!("{}:{}", a as char, b as char)).collect();
        f.write_str(&items.join(","))
    }
}

/// Relabels every cell.
pub fn apply_map(pi: &LetterMap, grid: &Grid) -> Result<Grid> {
    let cells = grid
        .cells()
        .iter()
        .map(|&c| pi.get(c).ok_or(Error::UnmappedLetter(c as char)))
        .collect::<Result<Vec<_>>>()?;
    Grid::new(grid.shape().clone(), cells)
}

/// Outcome of checking that `w` reduces to `w_prime` through `pi` with base
/// grid `gamma0`. The comparison against every grid is only carried out up
/// to size `checked_upto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub w: Word,
    pub w_prime: Word,
    pub pi: LetterMap,
    pub gamma0: Grid,
    /// `count(w, gamma0) / count(w_prime, pi(gamma0))`, when the denominator is nonzero.
    pub ratio_r: Option<Rational>,
    /// `gamma0` attains the one-dimensional maximum for `w`.
    pub base_extremal: bool,
    /// `pi(gamma0)` attains the one-dimensional maximum for `w_prime`.
    pub image_extremal: bool,
    /// No grid up to `checked_upto` cells beats the base ratio.
    pub ratio_bounded: bool,
    pub checked_upto: usize,
    /// First grid found with a larger ratio.
    pub counterexample: Option<Grid>,
}

impl ReductionCheck {
    pub fn passes(&self) -> bool {
        self.base_extremal && self.image_extremal && self.ratio_bounded
    }
}

/// Checks the three reduction conditions, the last one on every
/// one-dimensional grid over the letters of `w` with at most `n_max` cells.
/// `budget` caps the number of grids examined.
pub fn verify_reduction(
    w: &Word,
    w_prime: &Word,
    pi: &LetterMap,
    gamma0: &Grid,
    n_max: usize,
    budget: Option<u64>,
) -> Result<ReductionCheck> {
    if gamma0.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: gamma0.dim() });
    }
    if n_max < gamma0.size() {
        return Err(Error::DomainError(format!(
            "checking up to {n_max} cells does not cover the base grid of {} cells",
            gamma0.size()
        )));
    }
    let image0 = apply_map(pi, gamma0)?;
    let base = gamma0.count(w);
    let image = image0.count(w_prime);
    let ratio_r = (image > 0).then(|| Rational::new(BigInt::from(base), BigInt::from(image)));
    let base_extremal = gamma0.concentration(w) == c1(w);
    let image_extremal = image0.concentration(w_prime) == c1(w_prime);

    let alphabet = w.alphabet();
    for &a in &alphabet {
        pi.get(a).ok_or(Error::UnmappedLetter(a as char))?;
    }
    let k = alphabet.len() as u64;
    let total: u64 = (1..=n_max as u32).map(|n| k.saturating_pow(n)).fold(0, u64::saturating_add);
    if let Some(b) = budget {
        if total > b {
            return Err(Error::BudgetExceeded { budget: b, best: Rational::from_integer(0.into()) });
        }
    }
    let mut counterexample = None;
    for n in 1..=n_max {
        let shape = Shape::new(vec![n])?;
        let found = (0..k.pow(n as u32)).into_par_iter().find_first(|&index| {
            let g = nth_grid(&shape, &alphabet, index);
            let lhs = g.count(w) * image;
            let rhs = apply_map(pi, &g).expect("alphabet is mapped").count(w_prime) * base;
            lhs > rhs
        });
        if let Some(index) = found {
            counterexample = Some(nth_grid(&shape, &alphabet, index));
            break;
        }
    }
    Ok(ReductionCheck {
        w: w.clone(),
        w_prime: w_prime.clone(),
        pi: pi.clone(),
        gamma0: gamma0.clone(),
        ratio_r,
        base_extremal,
        image_extremal,
        ratio_bounded: counterexample.is_none(),
        checked_upto: n_max,
        counterexample,
    })
}

/// Grid number `index` in lexicographic order, first cell most significant.
fn nth_grid(shape: &Shape, alphabet: &[u8], mut index: u64) -> Grid {
    let k = alphabet.len() as u64;
    let mut cells = vec![0u8; shape.size()];
    for c in cells.iter_mut().rev() {
        *c = alphabet[(index % k) as usize];
        index /= k;
    }
    Grid::new(shape.clone(), cells).expect("alphabet letters are valid")
}

/// Letters at odd positions (first, third, ...) and at even positions, when
/// no letter occurs at both.
pub fn parity_classes(w: &Word) -> Option<(BTreeSet<u8>, BTreeSet<u8>)> {
    let odd: BTreeSet<u8> = w.symbols().iter().step_by(2).copied().collect();
    let even: BTreeSet<u8> = w.symbols().iter().skip(1).step_by(2).copied().collect();
    odd.is_disjoint(&even).then_some((odd, even))
}

/// The ratio `count(w, g) / count(OE, pi(g))` where `pi` sends each letter
/// to its parity class, as a numerator and denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityRatio {
    pub appearances: u64,
    /// Cyclically adjacent pairs with one letter from each class.
    pub mixed_pairs: u64,
}

impl ParityRatio {
    /// Zero when there are no mixed pairs, which forces zero appearances.
    pub fn value(&self) -> Rational {
        if self.mixed_pairs == 0 {
            Rational::from_integer(0.into())
        } else {
            Rational::new(self.appearances.into(), self.mixed_pairs.into())
        }
    }

    /// Compares values by cross-multiplication.
    pub fn at_least(&self, other: &ParityRatio) -> bool {
        if other.mixed_pairs == 0 || other.appearances == 0 {
            return true;
        }
        if self.mixed_pairs == 0 {
            return false;
        }
        self.appearances as u128 * other.mixed_pairs as u128
            >= other.appearances as u128 * self.mixed_pairs as u128
    }
}

/// Numerator and denominator of the parity ratio of a one-dimensional grid.
pub fn parity_ratio(w: &Word, grid: &Grid) -> Result<ParityRatio> {
    let (odd, even) = parity_classes(w).ok_or_else(|| Error::MixedParity(w.to_string()))?;
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    let pi = LetterMap::new(odd.iter().map(|&a| (a, b'O')).chain(even.iter().map(|&a| (a, b'E'))), &[])?;
    let image = apply_map(&pi, grid)?;
    let oe = Word::new("OE").expect("valid word");
    Ok(ParityRatio { appearances: grid.count(w), mixed_pairs: image.count(&oe) })
}

/// Whether every cyclically adjacent pair joins the two parity classes.
pub fn is_parity_respecting(w: &Word, grid: &Grid) -> Result<bool> {
    let (odd, _) = parity_classes(w).ok_or_else(|| Error::MixedParity(w.to_string()))?;
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    let cells = grid.cells();
    let n = cells.len();
    Ok(n >= 2 && (0..n).all(|i| odd.contains(&cells[i]) != odd.contains(&cells[(i + 1) % n])))
}

/// Turns a one-dimensional grid into one that alternates between the two
/// parity classes without lowering the parity ratio:
///
/// 1. cells on no appearance are removed, splicing the cycle;
/// 2. of two adjacent copies of the first (or of the last) letter, one is removed;
/// 3. for odd lengths the cycle is cut between adjacent end letters, each
///    piece `s` becomes the cycle `s` followed by the reverse of its interior,
///    and the best piece (first on ties) is kept.
///
/// A grid with no appearance has ratio zero and is replaced by the
/// one-dimensional extremal grid.
pub fn to_parity_respecting(w: &Word, grid: &Grid) -> Result<Grid> {
    let (odd, _) = parity_classes(w).ok_or_else(|| Error::MixedParity(w.to_string()))?;
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    for &c in grid.cells() {
        if !w.symbols().contains(&c) {
            return Err(Error::UnmappedLetter(c as char));
        }
    }
    // step 1
    let used = used_cells(w, grid);
    let mut cells: Vec<u8> = grid.cells().iter().zip(&used).filter(|(_, &u)| u).map(|(&c, _)| c).collect();
    if cells.is_empty() {
        return Ok(extremal_alternating(w));
    }
    // step 2
    let first = w.symbols()[0];
    let last = w.symbols()[w.len() - 1];
    loop {
        let n = cells.len();
        if n < 2 {
            break;
        }
        let dup = (0..n).find(|&i| {
            let (a, b) = (cells[i], cells[(i + 1) % n]);
            a == b && (a == first || a == last)
        });
        match dup {
            Some(i) => {
                cells.remove(i);
            }
            None => break,
        }
    }
    let line = |cells: Vec<u8>| Grid::new(Shape::new(vec![cells.len()]).expect("nonempty"), cells);
    if w.len().is_multiple_of(2) {
        return line(cells);
    }
    // step 3
    let n = cells.len();
    let same_class = |i: usize| odd.contains(&cells[i]) == odd.contains(&cells[(i + 1) % n]);
    let cuts: Vec<usize> = (0..n).filter(|&i| same_class(i)).collect();
    if cuts.is_empty() {
        return line(cells);
    }
    let mut best: Option<(ParityRatio, Grid)> = None;
    for (j, &cut) in cuts.iter().enumerate() {
        let end = cuts[(j + 1) % cuts.len()];
        let mut piece = Vec::new();
        let mut i = (cut + 1) % n;
        loop {
            piece.push(cells[i]);
            if i == end {
                break;
            }
            i = (i + 1) % n;
        }
        if piece.len() < 2 {
            continue;
        }
        let mut doubled = piece.clone();
        doubled.extend(piece[1..piece.len() - 1].iter().rev());
        let g = line(doubled)?;
        let r = parity_ratio(w, &g)?;
        if best.as_ref().is_none_or(|(b, _)| r.value() > b.value()) {
            best = Some((r, g));
        }
    }
    Ok(best.map(|(_, g)| g).unwrap_or_else(|| extremal_alternating(w)))
}

/// Marks cells that lie on at least one appearance in either direction.
fn used_cells(w: &Word, grid: &Grid) -> Vec<bool> {
    let mut used = vec![false; grid.size()];
    for a in grid.appearances(w) {
        let n = grid.size() as i64;
        let step = a.direction.components()[0] as i64;
        for i in 0..w.len() as i64 {
            used[(a.point[0] as i64 + i * step).rem_euclid(n) as usize] = true;
        }
    }
    used
}

/// The extremal one-dimensional grid that alternates between the parity
/// classes: the repeated-prefix block when the border beats the average
/// palindromic end, otherwise the mirrored block.
fn extremal_alternating(w: &Word) -> Grid {
    let p = profile(w);
    if w.is_palindrome() || 2 * p.border > p.palindrome_prefix + p.palindrome_suffix {
        construct_rep(w)
    } else {
        construct_pal(w).expect("not a palindrome")
    }
}

/// Repeats every letter `k` times. Panics when `k` is zero.
pub fn repeat_word(w: &Word, k: usize) -> Word {
    assert!(k >= 1, "repetition factor must be positive");
    let symbols = w.symbols().iter().flat_map(|&c| std::iter::repeat_n(c, k)).collect();
    Word::from_symbols(symbols).expect("repetition keeps the letters")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionCheck {
    /// `k * count(w^(k), g)`.
    pub lhs: u64,
    /// Sum over the `k^d` residue classes `v` of `count(w, g_v)`, where
    /// `g_v(z) = g(k z + v)`.
    pub rhs: u64,
    pub holds: bool,
}

/// Compares the repeated word's count with the counts in the subsampled
/// grids. Every extent must be a multiple of `k`.
pub fn check_repetition_inequality(w: &Word, k: usize, grid: &Grid) -> Result<RepetitionCheck> {
    if k == 0 {
        return Err(Error::DomainError("repetition factor must be positive".into()));
    }
    let ext = grid.shape().extents();
    if let Some(axis) = ext.iter().position(|&n| n % k != 0) {
        return Err(Error::ShapeError(format!(
            "extent {} on axis {axis} is not a multiple of {k}",
            ext[axis]
        )));
    }
    let lhs = k as u64 * grid.count(&repeat_word(w, k));
    let sub = Shape::new(ext.iter().map(|&n| n / k).collect())?;
    let residues = Shape::cube(k, grid.dim())?;
    let mut rhs = 0;
    for r in 0..residues.size() {
        let v = residues.coords(r);
        let g = Grid::from_fn(sub.clone(), |z| {
            let p: Vec<usize> = z.iter().zip(&v).map(|(&z, &v)| k * z + v).collect();
            grid.get(&p)
        })?;
        rhs += g.count(w);
    }
    Ok(RepetitionCheck { lhs, rhs, holds: lhs <= rhs })
}
