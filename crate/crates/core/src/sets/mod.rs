//! Measurable subsets of the line modelled as interval families: finite
//! disjoint unions with an optional symbolic tail.

mod family;
mod interval;
mod tail;

pub use family::IntervalFamily;
pub use interval::Interval;
pub use tail::{LeftFn, LeftFnKind, TailDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("intervals overlap: {0}")]
    Overlap(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
