//! Maximum concentration of a word in toroidal grids.
//!
//! A word appears in a grid at a cell `p` in a direction `v` in `{-1,0,1}^d`
//! when its letters occupy `p, p + v, p + 2v, ...`, read cyclically. This
//! crate computes the one-dimensional maximum in closed form, finds exact
//! maxima for fixed shapes, checks local weight certificates that bound the
//! maximum in higher dimensions, searches for such certificates by linear
//! programming, builds extremal constructions and checks reductions between
//! words.

pub mod constructions;
pub mod error;
pub mod fourier;
pub mod grid;
pub mod local;
pub mod oracle;
pub mod reductions;
pub mod scalar;
mod search;
pub mod word;

use std::fmt;

pub use error::{Error, Result};
pub use grid::{Direction, Grid, GridOp, Shape};
pub use scalar::Scalar;
pub use search::Strategy;
pub use word::Word;

/// Exact rational used for every reported concentration and bound.
pub type Rational = num_rational::BigRational;
/// Exact rational with machine-word parts.
pub type SmallRational = num_rational::Rational64;

pub type ExactProgram = local::LinearProgram<Rational>;
pub type FloatProgram = local::LinearProgram<f64>;

/// Where a reported value comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Oracle { shape: Shape },
    Certificate { id: String },
    Construction { name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub value: Rational,
    pub provenance: Provenance,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm => f.write_str("closed form"),
            Provenance::Oracle { shape } => write!(f, "oracle on {shape}"),
            Provenance::Certificate { id } => write!(f, "certificate {id}"),
            Provenance::Construction { name } => write!(f, "construction {name}"),
        }
    }
}
