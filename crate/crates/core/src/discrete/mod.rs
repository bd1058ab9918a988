//! Finitely supported sequences and the discrete operators built on them.

pub mod ops;
pub mod sequence;

pub use ops::{conv_star_2, convolve, s_p_omega, star_convolve, star_ratio, t_p_omega, tau_embedding_ratio, tau_m, to_dense};
pub use sequence::TruncatedSequence;
