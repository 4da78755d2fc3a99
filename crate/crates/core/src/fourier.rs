//! Numeric checks of two averaging inequalities over `(Z/nZ)^d`: a
//! three-term correlation bound for functions on `(Z/3Z)^d` and the spread
//! of a letter's count across search lines.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationCheck<T> {
    /// `E_{x,y} f(x) (1 - f(x+y)) (1 - f(x+2y))`.
    pub lhs: T,
    /// `(3/2) a (1 - a)^2` with `a` the mean of `f`.
    pub rhs: T,
    pub holds: bool,
}

/// Largest dimension accepted by [`lemma72_check`]; the pair sum has `9^d` terms.
pub const MAX_CORRELATION_DIM: usize = 4;

/// Evaluates both sides for `f` on `(Z/3Z)^d`, given row-major with the
/// last coordinate fastest.
pub fn lemma72_check<T: Scalar>(d: usize, values: &[T]) -> Result<CorrelationCheck<T>> {
    if d == 0 || d > MAX_CORRELATION_DIM {
        return Err(Error::DomainError(format!("dimension {d} outside 1..={MAX_CORRELATION_DIM}")));
    }
    let size = 3usize.pow(d as u32);
    if values.len() != size {
        return Err(Error::ShapeMismatch(format!("{} values for 3^{d} points", values.len())));
    }
    if let Some(v) = values.iter().find(|v| **v < T::zero() || **v > T::one()) {
        return Err(Error::DomainError(format!("value {v} outside [0, 1]")));
    }
    let digits: Vec<Vec<usize>> = (0..size)
        .map(|mut i| {
            let mut ds = vec![0; d];
            for slot in ds.iter_mut().rev() {
                *slot = i % 3;
                i /= 3;
            }
            ds
        })
        .collect();
    let index =
        |x: &[usize], y: &[usize], k: usize| x.iter().zip(y).fold(0, |acc, (a, b)| acc * 3 + (a + k * b) % 3);
    let one = T::one();
    let mut total = T::zero();
    for x in &digits {
        let fx = values[index(x, x, 0)].clone();
        if fx.is_zero() {
            continue;
        }
        for y in &digits {
            let a = one.clone() - values[index(x, y, 1)].clone();
            let b = one.clone() - values[index(x, y, 2)].clone();
            total = total + fx.clone() * a * b;
        }
    }
    let n = T::from_usize(size).unwrap();
    let lhs = total / (n.clone() * n.clone());
    let mean = values.iter().cloned().fold(T::zero(), |acc, v| acc + v) / n;
    let rest = one - mean.clone();
    let rhs = T::from_ratio(3, 2) * mean * rest.clone() * rest;
    let holds = !(lhs.clone() - rhs.clone()).is_pos();
    Ok(CorrelationCheck { lhs, rhs, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadCheck {
    /// Largest minus smallest count of the letter over all search lines.
    pub max_diff: u64,
    /// `sqrt(min(a, 1 - a)) / 3^(d/2) * n` with `a` the letter's frequency.
    pub bound: f64,
    pub holds: bool,
}

/// Compares the counts of `letter` along the search lines of a cubic grid
/// `(Z/nZ)^d` with `n < 2^d`.
pub fn searchline_spread(grid: &Grid, letter: u8) -> Result<SpreadCheck> {
    let d = grid.dim();
    let n = grid
        .shape()
        .cubic_extent()
        .ok_or_else(|| Error::ShapeError(format!("shape {} is not cubic", grid.shape())))?;
    if d >= usize::BITS as usize - 1 || n >= 1usize << d {
        return Err(Error::ShapeError(format!("extent {n} is not below 2^{d}")));
    }
    let cells = grid.cells();
    let counts: Vec<u64> = grid
        .search_lines()
        .iter()
        .map(|line| line.cells.iter().filter(|&&i| cells[i] == letter).count() as u64)
        .collect();
    let max_diff = counts.iter().max().unwrap() - counts.iter().min().unwrap();
    let alpha = cells.iter().filter(|&&c| c == letter).count() as f64 / cells.len() as f64;
    let bound = alpha.min(1.0 - alpha).sqrt() / 3f64.powf(d as f64 / 2.0) * n as f64;
    let holds = max_diff as f64 >= bound - 1e-12;
    Ok(SpreadCheck { max_diff, bound, holds })
}
