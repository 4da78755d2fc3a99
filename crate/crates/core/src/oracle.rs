//! Exact maximum concentration over all grids of a fixed shape.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grid::{directions, Grid, Shape};
use crate::search::{self, Clause, Problem, Strategy};
use crate::word::{c1, profile, Word};
use crate::Rational;

pub use crate::fourier::{lemma72_check, searchline_spread, CorrelationCheck, SpreadCheck};

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub strategy: Strategy,
    /// Maximum number of search nodes (assignments for full enumeration).
    pub budget: Option<u64>,
    /// Maximum number of optimal grids to return.
    pub witness_cap: usize,
    /// Pin the first cell to the first letter of the word. Valid for the
    /// maximum because any grid with an appearance can be translated to do
    /// so, but the witness list is then no longer complete.
    pub fix_translation: bool,
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            strategy: Strategy::BranchAndBound,
            budget: None,
            witness_cap: 1,
            fix_translation: false,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub max: Rational,
    pub count: u64,
    pub witnesses: Vec<Grid>,
    pub nodes: u64,
}

/// Cells as variables, letters of the word as values, one clause per
/// `(cell, direction)`.
fn appearance_problem(word: &Word, shape: &Shape) -> Problem {
    let alphabet = word.alphabet();
    let letter: Vec<u8> =
        word.symbols().iter().map(|s| alphabet.iter().position(|a| a == s).unwrap() as u8).collect();
    let mut clauses = Vec::with_capacity(shape.size() * (3usize.pow(shape.dim() as u32) - 1));
    for v in directions(shape.dim()) {
        let step = shape.step_table(&v);
        for start in 0..shape.size() {
            let mut cur = start;
            let mut reqs = Vec::with_capacity(letter.len());
            for &a in &letter {
                reqs.push((cur, a));
                cur = step[cur];
            }
            clauses.push(Clause { reqs, weight: 1 });
        }
    }
    Problem::new(shape.size(), alphabet.len() as u8, clauses)
}

pub fn max_concentration(word: &Word, shape: &Shape, opts: &OracleOptions) -> Result<OracleResult> {
    let alphabet = word.alphabet();
    let mut problem = appearance_problem(word, shape);
    if opts.fix_translation {
        problem.fixed[0] = Some(alphabet.iter().position(|&a| a == word.symbols()[0]).unwrap() as u8);
    }
    let outcome = search::solve(
        &problem,
        &search::Options {
            strategy: opts.strategy,
            budget: opts.budget,
            witness_cap: opts.witness_cap.max(1),
            parallel: opts.parallel,
        },
    );
    let size = BigInt::from(shape.size());
    let max = Rational::new(BigInt::from(outcome.best), size);
    if !outcome.complete {
        return Err(Error::BudgetExceeded { budget: opts.budget.unwrap_or(0), best: max });
    }
    let witnesses = outcome
        .witnesses
        .iter()
        .map(|vals| {
            let cells = vals.iter().map(|&v| alphabet[v as usize]).collect();
            Grid::new(shape.clone(), cells)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleResult { max, count: outcome.best, witnesses, nodes: outcome.nodes })
}

/// Oracle check of the one-dimensional closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Check {
    pub closed_form: Rational,
    pub oracle_max: Rational,
    /// Lengths `n <= n_max` whose best grid reaches the closed form.
    pub attained_at: Vec<usize>,
    pub holds: bool,
}

pub fn verify_c1(word: &Word, n_max: usize) -> Result<C1Check> {
    let closed_form = c1(word);
    let p = profile(word);
    let mut oracle_max = Rational::from_integer(BigInt::from(0));
    let mut attained_at = Vec::new();
    let opts = OracleOptions { parallel: false, ..OracleOptions::default() };
    for n in 1..=n_max {
        let r = max_concentration(word, &Shape::new(vec![n])?, &opts)?;
        if r.max == closed_form {
            attained_at.push(n);
        }
        if r.max > oracle_max {
            oracle_max = r.max;
        }
    }
    let small = attained_at.iter().any(|&n| n <= 2 * p.length - 2 || n == p.length - p.border);
    let holds = oracle_max == closed_form && small;
    Ok(C1Check { closed_form, oracle_max, attained_at, holds })
}
