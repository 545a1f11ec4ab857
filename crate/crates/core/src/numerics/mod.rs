//! Exact rational arithmetic, certified enclosures, series tail bounds and
//! comparison-based divergence certificates.

mod bracket;
mod enclosure;
mod rational;
mod series;

pub use bracket::{
    bits_for_width, ln2_enclosure, ln_enclosure, pow_enclosure, root_enclosure, sqrt_enclosure,
    sqrt_with_width, DEFAULT_ROOT_BITS,
};
pub use enclosure::{Enclosure, DEFAULT_GRID_BITS};
pub use rational::{int, rat, ParseRationalError, Rational};
pub use series::{
    divergence_by_comparison, harmonic, series_tail, series_tail_with, DivergenceCertificate,
    ExtendedValue, Rejection, SeqTerm, DEFAULT_TRUNCATION,
};
