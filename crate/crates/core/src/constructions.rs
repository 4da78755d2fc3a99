//! Lower-bound constructions: modular queens placements, the grids they
//! induce, and a fixed set of hand-made extremal grids.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::grid::{directions, Grid, Shape};
use crate::Rational;

/// Points of `(Z/nZ)^d` on which queens stand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueensPlacement {
    pub n: usize,
    pub d: usize,
    pub positions: Vec<Vec<usize>>,
}

impl QueensPlacement {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks every pair against every direction by walking the cyclic
    /// subgroup the direction generates.
    pub fn is_nonattacking(&self) -> bool {
        let n = self.n as i64;
        let dirs = directions(self.d);
        for (i, p) in self.positions.iter().enumerate() {
            if p.len() != self.d || p.iter().any(|&c| c >= self.n) {
                return false;
            }
            for q in &self.positions[i + 1..] {
                let diff: Vec<i64> =
                    p.iter().zip(q).map(|(&a, &b)| (b as i64 - a as i64).rem_euclid(n)).collect();
                if diff.iter().all(|&x| x == 0) {
                    return false;
                }
                for v in &dirs {
                    let hit = (1..n).any(|k| {
                        v.components().iter().zip(&diff).all(|(&c, &x)| (k * c as i64).rem_euclid(n) == x)
                    });
                    if hit {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `n` queens at `(i, 2i)` on the modular `n x n` board.
pub fn polya_queens(n: usize) -> Result<QueensPlacement> {
    if n == 0 || n.gcd(&6) != 1 {
        return Err(Error::GcdError { n: n as u64, modulus: "6".into() });
    }
    let positions = (0..n).map(|i| vec![i, 2 * i % n]).collect();
    Ok(QueensPlacement { n, d: 2, positions })
}

/// `n^(d-1)` queens on `(Z/nZ)^d` at `(sum_i 2^i a_i, a_1, ..., a_(d-1))`.
/// Requires every prime factor of `n` to exceed `2^d`.
pub fn power_queens(n: usize, d: usize) -> Result<QueensPlacement> {
    if d == 0 || d >= 16 {
        return Err(Error::DomainError(format!("dimension {d} outside 1..16")));
    }
    let reach = 1usize << d;
    if n == 0 || (2..=reach).any(|p| n.is_multiple_of(p)) {
        let modulus: BigUint = (1..=reach as u64).map(BigUint::from).product();
        return Err(Error::GcdError { n: n as u64, modulus: modulus.to_string() });
    }
    Shape::cube(n, d)?;
    let mut positions = Vec::with_capacity(n.pow(d as u32 - 1));
    let mut free = vec![0usize; d - 1];
    loop {
        let head = free.iter().enumerate().fold(0, |acc, (i, &a)| (acc + (2usize << i) % n * a) % n);
        let mut p = Vec::with_capacity(d);
        p.push(head);
        p.extend_from_slice(&free);
        positions.push(p);
        // odometer over the free coordinates, last fastest
        let mut k = d - 1;
        loop {
            if k == 0 {
                return Ok(QueensPlacement { n, d, positions });
            }
            k -= 1;
            free[k] += 1;
            if free[k] < n {
                break;
            }
            free[k] = 0;
        }
    }
}

/// `A` on the queens, `B` elsewhere. Every queen then starts an appearance of
/// `AB^(n-1)` in each of the `3^d - 1` directions.
pub fn queens_to_grid(q: &QueensPlacement, ell: usize) -> Result<Grid> {
    if q.n != ell {
        return Err(Error::ShapeMismatch(format!("board of side {} for a word of length {ell}", q.n)));
    }
    let shape = Shape::cube(q.n, q.d)?;
    let mut cells = vec![b'B'; shape.size()];
    for p in &q.positions {
        cells[shape.index(p)] = b'A';
    }
    Grid::new(shape, cells)
}

/// Backtracking search for `target` nonattacking queens on the modular
/// `n x n` board. Rows are scanned in order and columns in increasing order;
/// a queen is pinned at the origin, which loses nothing since placements can
/// be translated. Returns `None` when the exhaustive search finds nothing.
pub fn search_queens(
    n: usize,
    d: usize,
    target: usize,
    budget: Option<u64>,
) -> Result<Option<QueensPlacement>> {
    if d != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: d });
    }
    if n == 0 || n > 64 {
        return Err(Error::DomainError(format!("board side {n} outside 1..=64")));
    }
    if target == 0 {
        return Ok(Some(QueensPlacement { n, d, positions: Vec::new() }));
    }
    if target > n {
        return Ok(None);
    }
    let mut state = QueenSearch { n, target, budget, nodes: 0, best: 1, cols: Vec::with_capacity(target) };
    let bit = 1u64;
    // one queen per row; the first at (0, 0)
    state.cols.push(Some(0));
    let found = state.extend(1, bit, bit, bit)?;
    Ok(found.then(|| {
        let positions = state.cols.iter().enumerate().filter_map(|(r, c)| c.map(|c| vec![r, c])).collect();
        QueensPlacement { n, d, positions }
    }))
}

struct QueenSearch {
    n: usize,
    target: usize,
    budget: Option<u64>,
    nodes: u64,
    best: usize,
    cols: Vec<Option<usize>>,
}

impl QueenSearch {
    fn placed(&self) -> usize {
        self.cols.iter().flatten().count()
    }

    /// Masks hold used columns, `c - r` classes and `c + r` classes.
    fn extend(&mut self, row: usize, cols: u64, diff: u64, sum: u64) -> Result<bool> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded {
                    budget: b,
                    best: Rational::from_integer(self.best.into()),
                });
            }
        }
        let placed = self.placed();
        self.best = self.best.max(placed);
        if placed == self.target {
            return Ok(true);
        }
        if row == self.n || placed + (self.n - row) < self.target {
            return Ok(false);
        }
        let n = self.n;
        for c in 0..n {
            let dc = 1u64 << ((c + n - row) % n);
            let sc = 1u64 << ((c + row) % n);
            let cc = 1u64 << c;
            if cols & cc != 0 || diff & dc != 0 || sum & sc != 0 {
                continue;
            }
            self.cols.push(Some(c));
            if self.extend(row + 1, cols | cc, diff | dc, sum | sc)? {
                return Ok(true);
            }
            self.cols.pop();
        }
        self.cols.push(None);
        if self.extend(row + 1, cols, diff, sum)? {
            return Ok(true);
        }
        self.cols.pop();
        Ok(false)
    }
}

const GRID_TEXT: [(&str, &str); 8] = [
    ("fig1-left", include_str!("../../../data/grids/fig1-left.grid")),
    ("fig1-right", include_str!("../../../data/grids/fig1-right.grid")),
    ("fig5", include_str!("../../../data/grids/fig5.grid")),
    ("fig7-left", include_str!("../../../data/grids/fig7-left.grid")),
    ("fig7-right", include_str!("../../../data/grids/fig7-right.grid")),
    ("fig9-diag", include_str!("../../../data/grids/fig9-diag.grid")),
    ("fig9-stack", include_str!("../../../data/grids/fig9-stack.grid")),
    ("lemma67", include_str!("../../../data/grids/lemma67.grid")),
];

/// Names accepted by [`paper_grids`] lookups.
pub const GRID_NAMES: [&str; 8] =
    ["fig1-left", "fig1-right", "fig5", "fig7-left", "fig7-right", "fig9-diag", "fig9-stack", "lemma67"];

/// The fixed example grids, parsed from their embedded text.
pub fn paper_grids() -> BTreeMap<&'static str, Grid> {
    GRID_TEXT
        .iter()
        .map(|&(name, text)| {
            let grid = Grid::parse(text).unwrap_or_else(|e| panic!("embedded grid {name}: {e}"));
            (name, grid)
        })
        .collect()
}
