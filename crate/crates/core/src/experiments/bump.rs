use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Grid, LatticeSignal};
use crate::transforms::dft;

/// `e^{-1/(1-t²)}` on `(-1, 1)`, zero elsewhere.
pub fn bump_profile(t: f64) -> f64 {
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

/// `∫ bump_profile`, by composite Simpson on a fine grid.
fn profile_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        let n = 200_000;
        let h = 2.0 / n as f64;
        let mut s = bump_profile(-1.0) + bump_profile(1.0);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * bump_profile(-1.0 + k as f64 * h);
        }
        s * h / 3.0
    })
}

/// One-dimensional factor of `h`, scaled so that `∫ h = 2` and hence `ĥ(0) = 2`.
pub fn bump_1d(t: f64) -> f64 {
    2.0 * bump_profile(t) / profile_mass()
}

/// `h_λ(x) = λ^{-d} h(x/λ)` with `h(x) = ∏_i bump_1d(x_i)`, sampled at continuum positions.
///
/// `h_λ` lives on `[-λ, λ]^d`. Fails when that cube does not fit in the period or when
/// `λ` is below one lattice step, where the samples no longer resolve the bump.
pub fn dilated_bump(lambda: f64, grid: Grid) -> Result<LatticeSignal> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda = {lambda} must be positive")));
    }
    let half_period = grid.alpha * grid.n as f64 / 2.0;
    if lambda >= half_period {
        return Err(Error::SupportOverflow(format!(
            "bump radius {lambda} does not fit in the half period {half_period}"
        )));
    }
    if lambda <= grid.alpha {
        return Err(Error::SupportOverflow(format!(
            "bump radius {lambda} is below the lattice step {}",
            grid.alpha
        )));
    }
    let scale = lambda.powi(grid.d as i32).recip();
    Ok(LatticeSignal::from_positions(grid, |x| {
        let v: f64 = x.iter().map(|&t| bump_1d(t / lambda)).product();
        Complex64::new(scale * v, 0.0)
    }))
}

/// Largest `r` such that `|f̂(ξ)| ≥ level` for every lattice frequency with `max_i |ξ_i| ≤ r`.
///
/// For `h_λ` with `level = 1` this radius grows like `C/λ`, since `ĥ_λ(ξ) = ĥ(λξ)`.
pub fn fourier_plateau_radius(f: &LatticeSignal, level: f64) -> f64 {
    let grid = f.grid();
    let fhat = dft(f, false);
    let spacing = grid.freq_spacing();
    let mut best = f64::INFINITY;
    for (idx, v) in fhat.values().iter().enumerate() {
        if v.norm() < level {
            let r = grid
                .centered_coords(idx)
                .iter()
                .map(|k| k.unsigned_abs() as f64 * spacing)
                .fold(0.0, f64::max);
            best = best.min(r);
        }
    }
    // Every frequency strictly inside the first failing shell passes.
    if best.is_infinite() {
        spacing * (grid.n / 2) as f64
    } else {
        best - spacing
    }
}
