//! Exact scalar arithmetic and canonical polynomial expressions.

mod chart;
mod parse;
mod poly;
mod print;
mod scalar;

pub use chart::{Chart, CoordKind, Coordinate};
pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use poly::{Monomial, Poly};
pub use scalar::{rational, SplitComplex};

pub use chart::is_identifier;
