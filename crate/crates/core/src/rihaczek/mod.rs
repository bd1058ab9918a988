//! Multilinear Rihaczek distribution, its STFT closed form, and the Kohn–Nirenberg pairing.

pub mod closed_form;
pub mod distribution;
pub mod kohn_nirenberg;
pub mod ratio;

pub use closed_form::{closed_form_residual, rihaczek_stft_closed_form, rihaczek_stft_direct};
pub use distribution::{rihaczek, PhaseSpaceSignal};
pub use kohn_nirenberg::{duality_residual, kohn_nirenberg_apply, phase_space_inner};
pub use ratio::{boundedness_ratio, rihaczek_norm, rihaczek_norm_with_path, Denominator, NormPath, RatioSetup, Target};
