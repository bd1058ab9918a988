//! Extremal families from the sharpness arguments and log-log slope fits.

mod bump;
mod fit;
mod khinchin;
mod modulated;
mod scaling;

pub use bump::{bump_1d, bump_profile, dilated_bump, fourier_plateau_radius};
pub use fit::{fit_log_slope, LogFit};
pub use khinchin::{khinchin_empirical, khinchin_exhaustive, KhinchinReport, EXHAUSTIVE_LIMIT};
pub use modulated::{cell_cutoff, modulated_lattice_sum, sampling_recovery_residual, unit_step};
pub use scaling::{
    bump_scaling_series, predicted_bump_exponent, predicted_star_exponent, scaling_ratio_series,
    star_growth_series, ScalingReport, SCALING_WINDOW_WIDTH,
};
