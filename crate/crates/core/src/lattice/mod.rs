//! Lattice signals, exponents, weights and verdicts.

pub mod exponent;
pub mod signal;
pub mod tuple;
pub mod verdict;
pub mod weight;

pub use exponent::{parse_rational, rat, ExtendedExponent, Rational};
pub use signal::{Grid, LatticeSignal};
pub use tuple::{ExponentTuple, MixedNormSpec};
pub use verdict::{ConditionTrace, Verdict};
pub use weight::{moderate_condition_probe, weight_eval, ProbeReport, SeparableWeight, WeightCondition};
