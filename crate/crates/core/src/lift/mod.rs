//! Lifts of tensor fields from a base chart to its tangent bundle.

mod bundle;
mod connection;
mod horizontal;
pub mod identities;

pub use bundle::{tangent_chart, LiftedChart};
pub use connection::Connection;
pub use horizontal::{AdaptedFrame, HorizontalLift};
