//! Pointwise exact evaluation, rank, finite-difference cross-checks and
//! seeded generation of test data.

mod directional;
mod matrix;
mod point;
mod random;

pub use directional::{directional_check, directional_check_floating, DirectionalReport, FLOATING_TOLERANCE};
pub use matrix::{matrix_at, rank, rank_at, NullSplitMatrix, RationalMatrix};
pub use point::SamplePoint;
pub use random::{conjugate_by, random_conjugate, random_model, Generator, PolyShape};
