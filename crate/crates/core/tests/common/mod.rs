//! Helpers shared by the property suites. The counters here work straight
//! from the definition of an appearance and share no code with the library.

#![allow(dead_code)]

use proptest::prelude::*;
use wordgrid::constructions::QueensPlacement;
use wordgrid::{Grid, Shape, Word};

/// Every vector in `{-1,0,1}^d` except zero.
pub fn all_directions(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let mut c = code;
        let mut v = vec![0i64; d];
        for slot in v.iter_mut().rev() {
            *slot = (c % 3) as i64 - 1;
            c /= 3;
        }
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

/// Row-major coordinates of every cell.
pub fn all_points(ext: &[usize]) -> Vec<Vec<i64>> {
    let size: usize = ext.iter().product();
    (0..size)
        .map(|mut i| {
            let mut p = vec![0i64; ext.len()];
            for (slot, &n) in p.iter_mut().zip(ext).rev() {
                *slot = (i % n) as i64;
                i /= n;
            }
            p
        })
        .collect()
}

pub fn letter_at(ext: &[usize], cells: &[u8], p: &[i64]) -> u8 {
    let mut idx = 0usize;
    for (&x, &n) in p.iter().zip(ext) {
        idx = idx * n + x.rem_euclid(n as i64) as usize;
    }
    cells[idx]
}

/// Appearances counted from the definition.
pub fn naive_count(word: &[u8], ext: &[usize], cells: &[u8]) -> u64 {
    let mut total = 0;
    for p in all_points(ext) {
        for v in all_directions(ext.len()) {
            let hit = word.iter().enumerate().all(|(i, &c)| {
                let q: Vec<i64> = p.iter().zip(&v).map(|(&a, &b)| a + i as i64 * b).collect();
                letter_at(ext, cells, &q) == c
            });
            total += hit as u64;
        }
    }
    total
}

pub fn naive_grid_count(word: &Word, grid: &Grid) -> u64 {
    naive_count(word.symbols(), grid.shape().extents(), grid.cells())
}

/// Words over the first `letters` capital letters that use at least two of them.
pub fn word_strategy(letters: u8, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, len)
        .prop_filter("needs two letters", |s| s.iter().any(|&c| c != s[0]))
        .prop_map(|s| Word::from_symbols(s.into_iter().map(|c| b'A' + c).collect()).unwrap())
}

/// Grids of the given dimension with every extent in `1..=max_extent`.
pub fn grid_strategy(
    letters: u8,
    dim: std::ops::RangeInclusive<usize>,
    max_extent: usize,
    max_cells: usize,
) -> impl Strategy<Value = Grid> {
    dim.prop_flat_map(move |d| prop::collection::vec(1..=max_extent, d))
        .prop_filter("too many cells", move |ext| ext.iter().product::<usize>() <= max_cells)
        .prop_flat_map(move |ext| {
            let size = ext.iter().product::<usize>();
            (Just(ext), prop::collection::vec(0..letters, size))
        })
        .prop_map(|(ext, cells)| {
            Grid::new(Shape::new(ext).unwrap(), cells.into_iter().map(|c| b'A' + c).collect()).unwrap()
        })
}

/// One-dimensional grid over the given letters.
pub fn line_strategy(
    letters: &'static [u8],
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Grid> {
    prop::collection::vec(prop::sample::select(letters), len)
        .prop_map(|cells| Grid::line(std::str::from_utf8(&cells).unwrap()).unwrap())
}

/// All words of length `len` over `letters` letters that are not constant.
pub fn all_words(letters: u8, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for code in 0..(letters as usize).pow(len as u32) {
        let mut c = code;
        let mut s = vec![0u8; len];
        for slot in s.iter_mut().rev() {
            *slot = b'A' + (c % letters as usize) as u8;
            c /= letters as usize;
        }
        if let Ok(w) = Word::from_symbols(s) {
            out.push(w);
        }
    }
    out
}

/// Largest count over all one-dimensional grids of length `n` over `letters`.
pub fn brute_line_max(word: &Word, letters: &[u8], n: usize) -> u64 {
    let k = letters.len();
    let mut best = 0;
    let mut cells = vec![0u8; n];
    for code in 0..k.pow(n as u32) {
        let mut c = code;
        for slot in cells.iter_mut().rev() {
            *slot = letters[c % k];
            c /= k;
        }
        best = best.max(naive_count(word.symbols(), &[n], &cells));
    }
    best
}

/// Proptest settings with regressions stored next to the test file.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: Some(Box::new(prop::test_runner::FileFailurePersistence::WithSource(
            "regressions",
        ))),
        ..ProptestConfig::default()
    }
}

/// All-pairs test written from the definition: two queens attack when their
/// difference is a multiple of some direction modulo `n`.
pub fn attacks(n: usize, p: &[usize], q: &[usize]) -> bool {
    let n = n as i64;
    let diff: Vec<i64> = p.iter().zip(q).map(|(&a, &b)| (b as i64 - a as i64).rem_euclid(n)).collect();
    all_directions(p.len())
        .iter()
        .any(|v| (1..n).any(|k| v.iter().zip(&diff).all(|(&c, &d)| (k * c).rem_euclid(n) == d)))
}

pub fn independent_check(q: &QueensPlacement) -> bool {
    let ps = &q.positions;
    ps.iter().all(|p| p.len() == q.d && p.iter().all(|&c| c < q.n))
        && (0..ps.len()).all(|i| (i + 1..ps.len()).all(|j| ps[i] != ps[j] && !attacks(q.n, &ps[i], &ps[j])))
}
