//! Upper bounds from local weight certificates.

pub mod certificate;
pub mod lp;
pub mod simplex;
pub mod symmetry;

pub use certificate::{
    ab_power_certificate, certified_bound, check_condition_i, check_condition_ii, shipped_certificate,
    symmetrize, ConditionI, ConditionII, LocalPattern, WeightCertificate, WeightEntry, SHIPPED_CERTIFICATES,
};
pub use lp::{box_window, build_lp, solve_lp, LocalLp, LpOptions, LpReport};
pub use simplex::{LinearProgram, LpSolution, LpStatus};
pub use symmetry::{signed_permutations, window_stabilizer, AffineSymmetry, Point, SignedPermutation};
