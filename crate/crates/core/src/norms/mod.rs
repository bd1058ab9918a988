//! Mixed-norm, modulation, Fourier-modulation and Wiener amalgam quasi-norms.

pub mod mixed;
pub mod modulation;
pub mod wiener;

pub use mixed::{lp_norm, lp_reduce, mixed_norm, mixed_norm_with, NdArray};
pub use modulation::{fourier_modulation_norm, modulation_norm, stft_fourier_modulation_norm, stft_modulation_norm};
pub use wiener::{wiener_amalgam_norm, PartitionOfUnity};
