//! Search for local certificates by linear programming.
//!
//! Cells of a window `S` vary; every other cell holds a fixed letter. Weights
//! live on pairs whose appearance depends only on `S`, are constant on orbits
//! of the window's symmetry group, and are chosen to minimize the largest
//! weighted appearance sum over all fillings of `S`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{class_size, directions, Direction};
use crate::local::certificate::{WeightCertificate, WeightEntry};
use crate::local::simplex::{self, LinearProgram, LpStatus};
use crate::local::symmetry::{window_stabilizer, Point};
use crate::word::Word;
use crate::Rational;

/// The reduced program together with every candidate grid constraint.
#[derive(Clone, Debug)]
pub struct LocalLp {
    pub word: Word,
    pub dim: usize,
    pub window: Vec<Point>,
    pub fixed_letter: u8,
    /// Pairs whose appearance is decided by the window.
    pub pairs: Vec<(Point, Direction)>,
    /// Orbits of `pairs` under the window stabilizer; one variable each.
    pub orbits: Vec<Vec<usize>>,
    /// Coefficient rows, one per distinct grid constraint, over the orbits.
    pub rows: Vec<Vec<u32>>,
    /// Normalized class sums of each orbit variable, `[class][orbit]`.
    pub class_rows: Vec<Vec<Rational>>,
    pub grids: u64,
    pub grid_orbits: u64,
    pub symmetries: usize,
}

fn offset(p: &[i64], v: &Direction, i: i64) -> Point {
    p.iter().zip(v.components()).map(|(&a, &b)| a + i * b as i64).collect()
}

/// Builds the program for `word` in dimension `dim`. `max_grids` caps the
/// number of window fillings enumerated.
pub fn build_lp(
    word: &Word,
    dim: usize,
    window: &[Point],
    fixed_letter: u8,
    max_grids: Option<u64>,
) -> Result<LocalLp> {
    if window.is_empty() {
        return Err(Error::DomainError("the window is empty".into()));
    }
    if let Some(p) = window.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
    }
    if !word.symbols().contains(&fixed_letter) {
        return Err(Error::DomainError(format!(
            "fixed letter {} does not occur in {word}",
            fixed_letter as char
        )));
    }
    let window: Vec<Point> = window.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index: HashMap<&Point, usize> = window.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let alphabet = word.alphabet();
    let letters = word.symbols();
    let anchor = letters.iter().position(|&b| b != fixed_letter).unwrap() as i64;

    // pairs: some letter differs from the fixed one, so its cell is in S
    let mut pair_set: BTreeSet<(Point, Direction)> = BTreeSet::new();
    for v in directions(dim) {
        for s in &window {
            let p = offset(s, &v, -anchor);
            let ok = letters
                .iter()
                .enumerate()
                .all(|(i, &b)| b == fixed_letter || index.contains_key(&offset(&p, &v, i as i64)));
            if ok {
                pair_set.insert((p, v.clone()));
            }
        }
    }
    let pairs: Vec<(Point, Direction)> = pair_set.into_iter().collect();
    let pair_index: HashMap<&(Point, Direction), usize> =
        pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let symmetries = window_stabilizer(&window);
    let mut orbit_of = vec![usize::MAX; pairs.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..pairs.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = BTreeSet::new();
        for h in &symmetries {
            let img = (h.apply(&pairs[i].0), h.linear.apply_direction(&pairs[i].1));
            members.insert(pair_index[&img]);
        }
        for &m in &members {
            orbit_of[m] = id;
        }
        orbits.push(members.into_iter().collect());
    }

    let mut class_rows = vec![vec![Rational::zero(); orbits.len()]; dim];
    for (o, members) in orbits.iter().enumerate() {
        let j = pairs[members[0]].1.class();
        class_rows[j - 1][o] = Rational::new(BigInt::from(members.len()), BigInt::from(class_size(dim, j)));
    }
    for (j, row) in class_rows.iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            return Err(Error::DomainError(format!(
                "the window supports no pair in direction class {}",
                j + 1
            )));
        }
    }

    // requirements of each pair on the window, as (cell, letter index)
    let letter_index = |b: u8| alphabet.iter().position(|&a| a == b).unwrap() as u8;
    let reqs: Vec<Vec<(usize, u8)>> = pairs
        .iter()
        .map(|(p, v)| {
            letters
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| index.get(&offset(p, v, i as i64)).map(|&c| (c, letter_index(b))))
                .collect()
        })
        .collect();
    // window permutation induced by each symmetry
    let perms: Vec<Vec<usize>> =
        symmetries.iter().map(|h| window.iter().map(|p| index[&h.apply(p)]).collect()).collect();

    let k = alphabet.len() as u64;
    let n = window.len();
    let grids =
        k.checked_pow(n as u32).ok_or_else(|| Error::DomainError("too many window fillings".into()))?;
    if let Some(cap) = max_grids {
        if grids > cap {
            return Err(Error::BudgetExceeded { budget: cap, best: Rational::zero() });
        }
    }
    let mut seen_rows: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut grid_orbits = 0;
    let mut filling = vec![0u8; n];
    let mut image = vec![0u8; n];
    for code in 0..grids {
        let mut c = code;
        for slot in filling.iter_mut().rev() {
            *slot = (c % k) as u8;
            c /= k;
        }
        // keep only the lexicographically least filling of each orbit
        let mut least = true;
        for perm in &perms {
            for (i, &j) in perm.iter().enumerate() {
                image[j] = filling[i];
            }
            if image < filling {
                least = false;
                break;
            }
        }
        if !least {
            continue;
        }
        grid_orbits += 1;
        let mut row = vec![0u32; orbits.len()];
        for (pi, r) in reqs.iter().enumerate() {
            if r.iter().all(|&(cell, a)| filling[cell] == a) {
                row[orbit_of[pi]] += 1;
            }
        }
        seen_rows.insert(row);
    }

    Ok(LocalLp {
        word: word.clone(),
        dim,
        window,
        fixed_letter,
        pairs,
        orbits,
        rows: seen_rows.into_iter().collect(),
        class_rows,
        grids,
        grid_orbits,
        symmetries: symmetries.len(),
    })
}

#[derive(Clone, Debug)]
pub struct LpOptions {
    pub seed: u64,
    pub initial_sample: usize,
    pub max_rounds: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { seed: 0, initial_sample: 64, max_rounds: 1000 }
    }
}

#[derive(Clone, Debug)]
pub struct LpReport {
    pub value: Rational,
    pub certificate: WeightCertificate,
    pub rounds: usize,
    /// Grid constraints present in the final program.
    pub active_rows: usize,
}

fn dot(row: &[u32], y: &[Rational]) -> Rational {
    row.iter()
        .zip(y)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, v)| v.clone() * Rational::from_integer(BigInt::from(c)))
        .sum()
}

/// Row generation: solve on a sample of constraints, add the violated ones
/// (at most twice as many as in the previous round, most violated first),
/// repeat until nothing is violated.
pub fn solve_lp(lp: &LocalLp, opts: &LpOptions) -> Result<LpReport> {
    let vars = lp.orbits.len();
    let total = lp.rows.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut active: BTreeSet<usize> = if total <= opts.initial_sample {
        (0..total).collect()
    } else {
        sample(&mut rng, total, opts.initial_sample).into_iter().collect()
    };
    let mut cap = opts.initial_sample.max(1);
    let mut best_lower = Rational::zero();
    for round in 1..=opts.max_rounds {
        let mut objective = vec![Rational::zero(); vars + 1];
        objective[vars] = Rational::one();
        let mut program = LinearProgram::new(vars + 1, objective);
        for row in &lp.class_rows {
            let mut r = row.clone();
            r.push(Rational::zero());
            program.add_equality(r, Rational::one());
        }
        for &i in &active {
            let mut r: Vec<Rational> =
                lp.rows[i].iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
            r.push(-Rational::one());
            program.add_inequality(r, Rational::zero());
        }
        let sol = simplex::solve(&program, None)?;
        match sol.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => {
                return Err(Error::DomainError("condition (i) cannot be met on this window".into()))
            }
            LpStatus::Unbounded => unreachable!("the objective is bounded below by zero"),
        }
        let (y, m1) = (&sol.x[..vars], sol.x[vars].clone());
        best_lower = m1.clone();
        let mut violated: Vec<(Rational, usize)> = (0..total)
            .filter(|i| !active.contains(i))
            .filter_map(|i| {
                let excess = dot(&lp.rows[i], y) - m1.clone();
                (excess > Rational::zero()).then_some((excess, i))
            })
            .collect();
        if violated.is_empty() {
            return Ok(LpReport {
                certificate: certificate_from(lp, y, &m1),
                value: m1,
                rounds: round,
                active_rows: active.len(),
            });
        }
        violated.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        active.extend(violated.into_iter().take(cap).map(|(_, i)| i));
        cap *= 2;
    }
    Err(Error::BudgetExceeded { budget: opts.max_rounds as u64, best: best_lower })
}

fn certificate_from(lp: &LocalLp, y: &[Rational], m1: &Rational) -> WeightCertificate {
    let mut entries: BTreeMap<(Point, Direction), Rational> = BTreeMap::new();
    for (o, members) in lp.orbits.iter().enumerate() {
        if y[o].is_zero() {
            continue;
        }
        for &m in members {
            entries.insert(lp.pairs[m].clone(), y[o].clone());
        }
    }
    WeightCertificate {
        word: lp.word.clone(),
        dim: lp.dim,
        entries: entries
            .into_iter()
            .map(|((point, direction), weight)| WeightEntry { point, direction, weight })
            .collect(),
        claimed_k: Rational::one(),
        claimed_m: m1.clone(),
        fixed_letter: Some(lp.fixed_letter),
        window: Some(lp.window.clone()),
    }
}

/// The box `[lo_i, hi_i]` in every coordinate.
pub fn box_window(lo: &[i64], hi: &[i64]) -> Vec<Point> {
    let mut out: Vec<Point> = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
