//! Time-frequency analysis on finite periodic lattices.
//!
//! Signals live on `(Z/NZ)^d` with spacing `alpha`; sums carry Riemann factors
//! so they track the continuum integrals. On balanced grids (`alpha = N^{-1/2}`)
//! the index phase `k·n/N` equals the continuum phase `x·ξ` exactly.

pub mod cli;
pub mod discrete;
pub mod error;
pub mod experiments;
pub mod io;
pub mod lattice;
pub mod norms;
pub mod regions;
pub mod rihaczek;
pub mod transforms;

pub use error::{Error, Result};
pub use lattice::{ExponentTuple, ExtendedExponent, Grid, LatticeSignal, SeparableWeight, Verdict};
