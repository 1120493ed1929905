//! Tensor fields in a chart: containers, pointwise algebra, the Lie bracket
//! and the real/paracomplex frame change.

mod fields;
mod paracomplex;

pub use fields::{Metric, OneForm, Tensor11, VectorField};
pub use paracomplex::{FrameChange, ParacomplexChange};
