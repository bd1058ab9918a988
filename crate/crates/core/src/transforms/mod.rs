//! DFT, time-frequency shifts, STFT and Gabor systems.

pub mod dft;
pub mod fft;
pub mod gabor;
pub mod stft;

pub use dft::{dft, dft_naive, modulate, translate};
pub use gabor::{
    canonical_dual, frame_operator_apply, frame_operator_matrix, gabor_analysis, gabor_synthesis, walnut_frame_bounds,
    GaborCoefficients, GaborSystem, DENSE_LIMIT,
};
pub use stft::{
    conjugate_symmetry_residual, fundamental_identity_residual, stft, stft_support_box,
    stft_translation_covariance_residual, StftArray,
};
