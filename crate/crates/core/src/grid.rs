//! Toroidal grids, appearance counting, search lines and equivalence operations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::word::{LetterDistribution, Word};
use crate::Rational;

/// Largest number of cells a grid may have.
pub const MAX_CELLS: usize = 100_000_000;

/// Extents `(n_1, ..., n_d)` of a torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(extents: Vec<usize>) -> Result<Shape> {
        if extents.is_empty() {
            return Err(Error::ShapeError("a grid needs at least one axis".into()));
        }
        let mut size: usize = 1;
        for &n in &extents {
            if n == 0 {
                return Err(Error::ShapeError("extents must be positive".into()));
            }
            size = size
                .checked_mul(n)
                .filter(|&s| s <= MAX_CELLS)
                .ok_or_else(|| Error::ShapeError(format!("more than {MAX_CELLS} cells")))?;
        }
        Ok(Shape(extents))
    }

    /// Cube `(n, ..., n)` of dimension `d`.
    pub fn cube(n: usize, d: usize) -> Result<Shape> {
        Shape::new(vec![n; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().product()
    }

    /// Common extent when every axis has the same length.
    pub fn cubic_extent(&self) -> Option<usize> {
        let n = self.0[0];
        self.0.iter().all(|&m| m == n).then_some(n)
    }

    /// Row-major index; the last coordinate varies fastest.
    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.0).fold(0, |acc, (&c, &n)| acc * n + c % n)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for axis in (0..self.dim()).rev() {
            out[axis] = index % self.0[axis];
            index /= self.0[axis];
        }
        out
    }

    /// Index of an arbitrary integer point reduced onto the torus.
    pub fn wrap(&self, point: &[i64]) -> usize {
        point.iter().zip(&self.0).fold(0, |acc, (&c, &n)| acc * n + c.rem_euclid(n as i64) as usize)
    }

    /// `step[i]` is the index of cell `i` moved by `direction`.
    pub(crate) fn step_table(&self, direction: &Direction) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.dim());
        let mut stride = 1usize;
        for axis in (0..self.dim()).rev() {
            offsets.push((axis, stride));
            stride *= self.0[axis];
        }
        (0..self.size())
            .map(|i| {
                let mut j = i;
                for &(axis, stride) in &offsets {
                    let n = self.0[axis];
                    let c = (i / stride) % n;
                    let moved = match direction.0[axis] {
                        1 => (c + 1) % n,
                        -1 => (c + n - 1) % n,
                        _ => c,
                    };
                    j = j - c * stride + moved * stride;
                }
                j
            })
            .collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Nonzero vector in `{-1, 0, 1}^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(Vec<i8>);

impl Direction {
    pub fn new(components: Vec<i8>) -> Result<Direction> {
        if components.iter().any(|c| !(-1..=1).contains(c)) {
            return Err(Error::DomainError("direction components must be -1, 0 or 1".into()));
        }
        if components.iter().all(|&c| c == 0) {
            return Err(Error::DomainError("direction must be nonzero".into()));
        }
        Ok(Direction(components))
    }

    pub fn components(&self) -> &[i8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of nonzero components.
    pub fn class(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    pub fn negated(&self) -> Direction {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    /// Whether the first nonzero component is positive.
    pub fn is_leading_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `3^d - 1` directions in lexicographic order.
pub fn directions(d: usize) -> Vec<Direction> {
    let total = 3usize.pow(d as u32);
    let mut out = Vec::with_capacity(total - 1);
    for code in 0..total {
        let mut comps = vec![0i8; d];
        let mut c = code;
        for axis in (0..d).rev() {
            comps[axis] = (c % 3) as i8 - 1;
            c /= 3;
        }
        if comps.iter().any(|&x| x != 0) {
            out.push(Direction(comps));
        }
    }
    out
}

/// `|V_j| = 2^j * C(d, j)`.
pub fn class_size(d: usize, j: usize) -> u64 {
    if j > d {
        return 0;
    }
    let mut binom: u64 = 1;
    for i in 0..j as u64 {
        binom = binom * (d as u64 - i) / (i + 1);
    }
    binom << j
}

/// A starting cell together with a direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Appearance {
    pub point: Vec<usize>,
    pub direction: Direction,
}

/// Orbit `{p + k v}` of a cell under one direction, listed from its least cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLine {
    pub start: Vec<usize>,
    pub direction: Direction,
    pub cells: Vec<usize>,
}

impl SearchLine {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Operations that preserve the concentration of every word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridOp {
    /// Repeat the grid `factor` times along `axis`.
    Enlarge {
        axis: usize,
        factor: usize,
    },
    /// Inverse of `Enlarge`; the grid must repeat `factor` times along `axis`.
    Contract {
        axis: usize,
        factor: usize,
    },
    /// `x_axis -> -x_axis`.
    Reverse {
        axis: usize,
    },
    /// New cell `x` holds the old cell `x + offset`.
    Translate {
        offset: Vec<i64>,
    },
    Swap {
        first: usize,
        second: usize,
    },
}

/// Letters on a torus, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    shape: Shape,
    cells: Vec<u8>,
}

fn check_letter(b: u8) -> Result<u8> {
    if b.is_ascii_uppercase() {
        Ok(b)
    } else {
        Err(Error::InvalidSymbol(b as char))
    }
}

impl Grid {
    pub fn new(shape: Shape, cells: Vec<u8>) -> Result<Grid> {
        if cells.len() != shape.size() {
            return Err(Error::ShapeMismatch(format!("{} cells for shape {}", cells.len(), shape)));
        }
        for &b in &cells {
            check_letter(b)?;
        }
        Ok(Grid { shape, cells })
    }

    pub fn filled(shape: Shape, letter: u8) -> Result<Grid> {
        let cells = vec![check_letter(letter)?; shape.size()];
        Ok(Grid { shape, cells })
    }

    pub fn from_fn(shape: Shape, mut letter: impl FnMut(&[usize]) -> u8) -> Result<Grid> {
        let cells =
            (0..shape.size()).map(|i| check_letter(letter(&shape.coords(i)))).collect::<Result<Vec<_>>>()?;
        Ok(Grid { shape, cells })
    }

    /// One-dimensional grid spelling `text`.
    pub fn line(text: &str) -> Result<Grid> {
        let shape = Shape::new(vec![text.len()])?;
        Grid::new(shape, text.as_bytes().to_vec())
    }

    /// Two-dimensional grid; each row fixes the first coordinate.
    pub fn from_rows(rows: &[&str]) -> Result<Grid> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        let shape = Shape::new(vec![rows.len(), width])?;
        Grid::new(shape, rows.concat().into_bytes())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, coords: &[usize]) -> u8 {
        self.cells[self.shape.index(coords)]
    }

    /// Letter at an integer point, read cyclically.
    pub fn at(&self, point: &[i64]) -> u8 {
        self.cells[self.shape.wrap(point)]
    }

    /// Letters as a string, row-major.
    pub fn letters(&self) -> String {
        String::from_utf8(self.cells.clone()).expect("grids hold ASCII")
    }

    pub fn letter_distribution(&self) -> LetterDistribution {
        let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
        for &b in &self.cells {
            *counts.entry(b).or_default() += 1;
        }
        let total = BigInt::from(self.size());
        counts.into_iter().map(|(b, c)| (b, Rational::new(BigInt::from(c), total.clone()))).collect()
    }

    fn count_along(&self, word: &[u8], step: &[usize]) -> u64 {
        let mut total = 0;
        for start in 0..self.cells.len() {
            let mut cur = start;
            let mut ok = true;
            for &letter in word {
                if self.cells[cur] != letter {
                    ok = false;
                    break;
                }
                cur = step[cur];
            }
            total += ok as u64;
        }
        total
    }

    /// Appearance counts per direction, in the order of [`directions`].
    pub fn count_by_direction(&self, word: &Word) -> Vec<(Direction, u64)> {
        directions(self.dim())
            .into_iter()
            .map(|v| {
                let step = self.shape.step_table(&v);
                let c = self.count_along(word.symbols(), &step);
                (v, c)
            })
            .collect()
    }

    /// `result[j - 1]` counts appearances whose direction has `j` nonzero entries.
    pub fn count_by_class(&self, word: &Word) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for (v, c) in self.count_by_direction(word) {
            out[v.class() - 1] += c;
        }
        out
    }

    pub fn count(&self, word: &Word) -> u64 {
        self.count_by_direction(word).iter().map(|(_, c)| c).sum()
    }

    pub fn concentration(&self, word: &Word) -> Rational {
        Rational::new(BigInt::from(self.count(word)), BigInt::from(self.size()))
    }

    pub fn appearances(&self, word: &Word) -> Vec<Appearance> {
        let mut out = Vec::new();
        for v in directions(self.dim()) {
            let step = self.shape.step_table(&v);
            for start in 0..self.size() {
                let mut cur = start;
                if word.symbols().iter().all(|&letter| {
                    let hit = self.cells[cur] == letter;
                    cur = step[cur];
                    hit
                }) {
                    out.push(Appearance { point: self.shape.coords(start), direction: v.clone() });
                }
            }
        }
        out.sort();
        out
    }

    /// Every search line, once per pair `{v, -v}`, using the direction whose
    /// first nonzero component is positive.
    pub fn search_lines(&self) -> Vec<SearchLine> {
        let mut out = Vec::new();
        for v in directions(self.dim()).into_iter().filter(Direction::is_leading_positive) {
            let step = self.shape.step_table(&v);
            let mut seen = vec![false; self.size()];
            for start in 0..self.size() {
                if seen[start] {
                    continue;
                }
                let mut cells = Vec::new();
                let mut cur = start;
                loop {
                    seen[cur] = true;
                    cells.push(cur);
                    cur = step[cur];
                    if cur == start {
                        break;
                    }
                }
                out.push(SearchLine { start: self.shape.coords(start), direction: v.clone(), cells });
            }
        }
        out
    }

    /// One-dimensional grid read along a search line.
    pub fn line_grid(&self, line: &SearchLine) -> Grid {
        let cells: Vec<u8> = line.cells.iter().map(|&i| self.cells[i]).collect();
        Grid { shape: Shape(vec![cells.len()]), cells }
    }

    pub fn transform(&self, op: &GridOp) -> Result<Grid> {
        let d = self.dim();
        let check_axis = |axis: usize| {
            if axis < d {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index: axis, len: d })
            }
        };
        match op {
            GridOp::Enlarge { axis, factor } => {
                check_axis(*axis)?;
                if *factor == 0 {
                    return Err(Error::DomainError("enlargement factor must be positive".into()));
                }
                let mut ext = self.shape.0.clone();
                ext[*axis] *= factor;
                let shape = Shape::new(ext)?;
                Grid::from_fn(shape, |x| self.get(x))
            }
            GridOp::Contract { axis, factor } => {
                check_axis(*axis)?;
                let n = self.shape.0[*axis];
                if *factor == 0 || !n.is_multiple_of(*factor) {
                    return Err(Error::NotPeriodic { axis: *axis, period: *factor });
                }
                let mut ext = self.shape.0.clone();
                ext[*axis] = n / factor;
                let shape = Shape::new(ext)?;
                let small = Grid::from_fn(shape, |x| self.get(x))?;
                let back = small.transform(&GridOp::Enlarge { axis: *axis, factor: *factor })?;
                if back != *self {
                    return Err(Error::NotPeriodic { axis: *axis, period: *factor });
                }
                Ok(small)
            }
            GridOp::Reverse { axis } => {
                check_axis(*axis)?;
                Grid::from_fn(self.shape.clone(), |x| {
                    let mut p: Vec<i64> = x.iter().map(|&c| c as i64).collect();
                    p[*axis] = -p[*axis];
                    self.at(&p)
                })
            }
            GridOp::Translate { offset } => {
                if offset.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: offset.len() });
                }
                Grid::from_fn(self.shape.clone(), |x| {
                    let p: Vec<i64> = x.iter().zip(offset).map(|(&c, &t)| c as i64 + t).collect();
                    self.at(&p)
                })
            }
            GridOp::Swap { first, second } => {
                check_axis(*first)?;
                check_axis(*second)?;
                let mut ext = self.shape.0.clone();
                ext.swap(*first, *second);
                Grid::from_fn(Shape(ext), |x| {
                    let mut y = x.to_vec();
                    y.swap(*first, *second);
                    self.get(&y)
                })
            }
        }
    }

    /// Adds a trailing axis of extent one. Every count triples.
    pub fn stack(&self) -> Result<Grid> {
        let mut ext = self.shape.0.clone();
        ext.push(1);
        Grid::new(Shape::new(ext)?, self.cells.clone())
    }

    /// Text form: a `shape:` header, then rows of `n_d` letters. Blocks of
    /// rows are separated by blank lines when `d >= 3`.
    pub fn to_text(&self) -> String {
        let ext = self.shape.extents();
        let d = ext.len();
        let width = ext[d - 1];
        let block = if d >= 2 { ext[d - 2] * width } else { width };
        let header: Vec<String> = ext.iter().map(|n| n.to_string()).collect();
        let mut out = format!("shape: {}\n", header.join(" "));
        for (b, chunk) in self.cells.chunks(block).enumerate() {
            if b > 0 && d >= 3 {
                out.push('\n');
            }
            for row in chunk.chunks(width) {
                out.push_str(std::str::from_utf8(row).expect("ASCII"));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Grid> {
        if !text.ends_with('\n') {
            return Err(Error::parse(text.lines().count().max(1), "missing trailing newline"));
        }
        let lines: Vec<&str> = text[..text.len() - 1].split('\n').collect();
        let header =
            lines[0].strip_prefix("shape:").ok_or_else(|| Error::parse(1, "expected `shape: n1 ... nd`"))?;
        let extents = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(1, format!("bad extent `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        let shape = Shape::new(extents).map_err(|e| Error::parse(1, e.to_string()))?;
        let ext = shape.extents().to_vec();
        let d = ext.len();
        let width = ext[d - 1];
        let rows_per_block = if d >= 2 { ext[d - 2] } else { 1 };
        let blocks = shape.size() / (rows_per_block * width);
        let mut cells = Vec::with_capacity(shape.size());
        let mut at = 1;
        for b in 0..blocks {
            if b > 0 && d >= 3 {
                match lines.get(at) {
                    Some(&"") => at += 1,
                    _ => return Err(Error::parse(at + 1, "expected a blank line between blocks")),
                }
            }
            for _ in 0..rows_per_block {
                let row = lines
                    .get(at)
                    .ok_or_else(|| Error::parse(at + 1, "too few cells for the declared shape"))?;
                if row.len() != width {
                    return Err(Error::parse(
                        at + 1,
                        format!("expected {width} letters, found {}", row.len()),
                    ));
                }
                for c in row.bytes() {
                    if !c.is_ascii_uppercase() {
                        return Err(Error::parse(at + 1, format!("invalid symbol {:?}", c as char)));
                    }
                    cells.push(c);
                }
                at += 1;
            }
        }
        if at != lines.len() {
            return Err(Error::parse(at + 1, "too many cells for the declared shape"));
        }
        Grid::new(shape, cells)
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid({}: {})", self.shape, self.letters())
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grid> {
        Grid::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        Word::new(s).unwrap()
    }

    /// Direct count from the definition, with explicit coordinates.
    fn naive_count(g: &Grid, word: &Word) -> u64 {
        let mut total = 0;
        for v in directions(g.dim()) {
            for i in 0..g.size() {
                let p = g.shape().coords(i);
                let hit = word.symbols().iter().enumerate().all(|(k, &letter)| {
                    let q: Vec<i64> =
                        p.iter().zip(v.components()).map(|(&c, &s)| c as i64 + k as i64 * s as i64).collect();
                    g.at(&q) == letter
                });
                total += hit as u64;
            }
        }
        total
    }

    #[test]
    fn direction_classes_have_binomial_sizes() {
        for d in 1..=4 {
            let dirs = directions(d);
            assert_eq!(dirs.len(), 3usize.pow(d as u32) - 1);
            for j in 1..=d {
                let n = dirs.iter().filter(|v| v.class() == j).count() as u64;
                assert_eq!(n, class_size(d, j));
            }
        }
    }

    #[test]
    fn reference_counts() {
        let g = Grid::from_rows(&["AB", "BA"]).unwrap();
        assert_eq!(g.count(&w("AB")), naive_count(&g, &w("AB")));
        let g = Grid::from_rows(&["AB", "AB"]).unwrap();
        assert_eq!(g.count(&w("AB")), 12);
        assert_eq!(g.concentration(&w("AB")), ratio(3, 1));
        // forwards from the A, and backwards through the wrap
        let g = Grid::line("ABCDCB").unwrap();
        assert_eq!(g.count(&w("ABCD")), 2);
    }

    #[test]
    fn words_longer_than_the_grid_wrap() {
        let g = Grid::line("AB").unwrap();
        assert_eq!(g.count(&w("ABABA")), 2);
        let g = Grid::line("A").unwrap();
        assert_eq!(g.count(&w("AB")), 0);
    }

    #[test]
    fn count_matches_naive_on_small_grids() {
        let g = Grid::from_fn(Shape::new(vec![3, 2, 4]).unwrap(), |x| {
            b"AB"[(x[0] * 7 + x[1] * 3 + x[2] * x[2]) % 2]
        })
        .unwrap();
        for word in ["AB", "ABB", "ABAB", "BBA", "ABBBBBB"] {
            assert_eq!(g.count(&w(word)), naive_count(&g, &w(word)), "{word}");
        }
        let total: u64 = g.count_by_class(&w("AB")).iter().sum();
        assert_eq!(total, g.count(&w("AB")));
    }

    #[test]
    fn search_lines_of_two_by_three() {
        let g = Grid::from_rows(&["ABC", "DEF"]).unwrap();
        let got: BTreeSet<String> = g.search_lines().iter().map(|l| g.line_grid(l).letters()).collect();
        let want: BTreeSet<String> =
            ["AD", "BE", "CF", "ABC", "DEF", "AECDBF", "AFBDCE"].iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn one_dimensional_grid_has_one_line() {
        let g = Grid::line("ABBAB").unwrap();
        let lines = g.search_lines();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].len(), 5);
    }

    #[test]
    fn reverse_and_swap() {
        let g = Grid::line("ABC").unwrap();
        let r = g.transform(&GridOp::Reverse { axis: 0 }).unwrap();
        assert_eq!(r.letters(), "ACB");
        let g = Grid::from_rows(&["ABC", "DEF"]).unwrap();
        let s = g.transform(&GridOp::Swap { first: 0, second: 1 }).unwrap();
        assert_eq!(s, Grid::from_rows(&["AD", "BE", "CF"]).unwrap());
    }

    #[test]
    fn contract_requires_periodicity() {
        let g = Grid::line("ABAB").unwrap();
        let c = g.transform(&GridOp::Contract { axis: 0, factor: 2 }).unwrap();
        assert_eq!(c.letters(), "AB");
        let g = Grid::line("ABBA").unwrap();
        assert!(matches!(
            g.transform(&GridOp::Contract { axis: 0, factor: 2 }),
            Err(Error::NotPeriodic { .. })
        ));
        assert!(matches!(
            g.transform(&GridOp::Contract { axis: 0, factor: 3 }),
            Err(Error::NotPeriodic { .. })
        ));
    }

    #[test]
    fn text_round_trip_and_layout() {
        let g = Grid::from_rows(&["ABC", "DEF"]).unwrap();
        assert_eq!(g.to_text(), "shape: 2 3\nABC\nDEF\n");
        assert_eq!(Grid::parse(&g.to_text()).unwrap(), g);
        let g3 = Grid::from_fn(Shape::new(vec![2, 2, 3]).unwrap(), |x| {
            b"ABCDEFGHIJKL"[x[0] * 6 + x[1] * 3 + x[2]]
        })
        .unwrap();
        assert_eq!(g3.to_text(), "shape: 2 2 3\nABC\nDEF\n\nGHI\nJKL\n");
        assert_eq!(Grid::parse(&g3.to_text()).unwrap(), g3);
        let line = Grid::line("ABBA").unwrap();
        assert_eq!(line.to_text(), "shape: 4\nABBA\n");
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!(Grid::parse("shape: 2 2\nAB\nAB").is_err());
        assert!(Grid::parse("shape: 2 2\nAB\n").is_err());
        assert!(Grid::parse("shape: 2 2\nAB\nABC\n").is_err());
        assert!(Grid::parse("shape: 2 2\nAB\nAb\n").is_err());
        assert!(Grid::parse("shape: 2 2\nAB\nAB\nAB\n").is_err());
        assert!(Grid::parse("size: 2\nAB\n").is_err());
        assert!(Grid::parse("shape: 2 0\n").is_err());
    }

    #[test]
    fn shape_cap() {
        assert!(Shape::new(vec![10_000, 10_000]).is_ok());
        assert!(Shape::new(vec![10_000, 10_001]).is_err());
    }

    #[test]
    fn stacking_triples_counts() {
        let g = Grid::from_rows(&["ABB", "BAB", "BBA"]).unwrap();
        let s = g.stack().unwrap();
        assert_eq!(s.count(&w("ABB")), 3 * g.count(&w("ABB")));
    }
}
