//! Symbolic tensor calculus on tangent bundles.
//!
//! Scalars are canonical polynomials over the split-complex rationals, tensor
//! fields are component arrays of those polynomials in a fixed chart, and
//! every identity is decided by exact canonical-form equality.
//!
//! * [`expr`]: split-complex scalars, polynomials, parser and printer.
//! * [`tensor`]: vector fields, 1-forms, (1,1)-tensors, metrics, brackets and
//!   the real/paracomplex frame change.
//! * [`lift`]: vertical, complete and horizontal lifts to the tangent bundle.
//! * [`structure`]: paracontact models, axiom checkers and the almost
//!   paracomplex constructions on the tangent bundle.
//! * [`oracle`]: pointwise exact evaluation, ranks, finite differences and
//!   seeded random generators.

pub mod error;
pub mod expr;
pub mod lift;
pub mod oracle;
pub mod structure;
pub mod tensor;

pub use error::{Error, Result};
pub use expr::{parse_expr, Chart, Poly, SplitComplex};
