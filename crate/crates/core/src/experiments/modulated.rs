use num_complex::Complex64;

use crate::discrete::TruncatedSequence;
use crate::error::{Error, Result};
use crate::lattice::{Grid, LatticeSignal};
use crate::norms::wiener::smooth_step;
use crate::transforms::stft;

/// Number of lattice points per unit length, when `1/α` is an integer dividing `N`.
pub fn unit_step(grid: Grid) -> Result<usize> {
    let step = (1.0 / grid.alpha).round();
    if step < 1.0 || (step * grid.alpha - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "1/alpha = {} is not an integer",
            1.0 / grid.alpha
        )));
    }
    let step = step as usize;
    if !grid.n.is_multiple_of(step) {
        return Err(Error::StepDoesNotDivide { step, n: grid.n });
    }
    Ok(step)
}

fn check_in_cell(bump: &LatticeSignal, step: usize) -> Result<()> {
    let grid = bump.grid();
    for (idx, v) in bump.values().iter().enumerate() {
        let far = grid.centered_coords(idx).iter().any(|k| 2 * k.unsigned_abs() as usize >= step);
        if far && *v != Complex64::new(0.0, 0.0) {
            return Err(Error::SupportOverflow(format!(
                "bump is nonzero at {:?}, outside the unit cell",
                grid.position(idx)
            )));
        }
    }
    Ok(())
}

/// `g(x) = Σ b(k_0, n_0) e^{2πi n_0·x} φ(x - k_0)` with integer `k_0, n_0` in continuum units.
///
/// `b` lives on `Z^d × Z^d` as `(k_0, n_0)`. The grid must have `1/α` integral so that unit
/// shifts are lattice shifts, and `φ` must vanish outside the open unit cell.
pub fn modulated_lattice_sum(b: &TruncatedSequence, bump: &LatticeSignal, grid: Grid) -> Result<LatticeSignal> {
    grid.ensure_same(&bump.grid())?;
    let d = grid.d;
    if b.d() != 2 * d {
        return Err(Error::DimensionMismatch { expected: 2 * d, got: b.d() });
    }
    let step = unit_step(grid)?;
    check_in_cell(bump, step)?;
    let cells = (grid.n / step) as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (key, coef) in b.iter() {
        let (k0, n0) = key.split_at(d);
        if k0.iter().any(|&k| k < -cells / 2 || k >= cells - cells / 2) {
            return Err(Error::SupportOverflow(format!("cell {k0:?} is outside the period")));
        }
        for (idx, slot) in out.iter_mut().enumerate() {
            let t = grid.centered_coords(idx);
            let shifted: Vec<i64> = t.iter().zip(k0).map(|(ti, ki)| ti - ki * step as i64).collect();
            let phi = bump.get(&shifted);
            if phi == Complex64::new(0.0, 0.0) {
                continue;
            }
            // e^{2πi n_0·x} with x = αt and α = 1/step.
            let phase: i64 = t.iter().zip(n0).map(|(ti, ni)| ti * ni).sum();
            let turns = (phase.rem_euclid(step as i64)) as f64 / step as f64;
            *slot += coef * phi * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * turns);
        }
    }
    LatticeSignal::new(grid, out)
}

/// Tensor cutoff equal to `1` on `[-1/4, 1/4]^d` and `0` outside `(-1/2, 1/2)^d`.
pub fn cell_cutoff(grid: Grid) -> LatticeSignal {
    LatticeSignal::from_positions(grid, |x| {
        let v: f64 = x.iter().map(|&t| smooth_step(4.0 * (0.5 - t.abs()))).product();
        Complex64::new(v, 0.0)
    })
}

/// `max |V_φ g(k_0, n_0) - ĝ_{k_0}(n_0)|` over the support of `b`, where `g_{k_0}` is the
/// part of `g` built from the coefficients in cell `k_0` and `φ` is [`cell_cutoff`].
///
/// Requires the bump to live inside `[-1/4, 1/4]^d`.
pub fn sampling_recovery_residual(b: &TruncatedSequence, bump: &LatticeSignal) -> Result<f64> {
    let grid = bump.grid();
    let d = grid.d;
    let step = unit_step(grid)? as i64;
    let g = modulated_lattice_sum(b, bump, grid)?;
    let v = stft(&g, &cell_cutoff(grid))?;
    let alpha_n = grid.n as i64 / step;
    let mut worst = 0.0f64;
    for key in b.support() {
        let (k0, n0) = key.split_at(d);
        let piece: Vec<(Vec<i64>, Complex64)> = b
            .iter()
            .filter(|(k, _)| &k[..d] == k0)
            .map(|(k, c)| (k.clone(), *c))
            .collect();
        let piece = TruncatedSequence::from_points(2 * d, piece)?;
        let gk = modulated_lattice_sum(&piece, bump, grid)?;
        let fourier = fourier_at(&gk, n0);
        let x: Vec<i64> = k0.iter().map(|k| k * step).collect();
        let xi: Vec<i64> = n0.iter().map(|n| n * alpha_n).collect();
        worst = worst.max((v.get(&x, &xi) - fourier).norm());
    }
    Ok(worst)
}

/// `f̂(ξ) = α^d Σ_t f(t) e^{-2πi x·ξ}` at an integer continuum frequency.
fn fourier_at(f: &LatticeSignal, xi: &[i64]) -> Complex64 {
    let grid = f.grid();
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, v) in f.values().iter().enumerate() {
        let x = grid.position(idx);
        let phase: f64 = x.iter().zip(xi).map(|(a, b)| a * *b as f64).sum();
        acc += v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase);
    }
    acc * grid.cell_volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::dilated_bump;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Grid {
        Grid::balanced(1, 64).unwrap()
    }

    #[test]
    fn single_coefficient_is_the_bump() {
        let bump = dilated_bump(0.2, grid()).unwrap();
        let b = TruncatedSequence::delta(vec![0, 0]);
        let g = modulated_lattice_sum(&b, &bump, grid()).unwrap();
        assert!(g.max_abs_diff(&bump).unwrap() < 1e-15);
    }

    #[test]
    fn shifted_coefficient_translates() {
        let bump = dilated_bump(0.2, grid()).unwrap();
        let b = TruncatedSequence::delta(vec![2, 0]);
        let g = modulated_lattice_sum(&b, &bump, grid()).unwrap();
        for idx in 0..64 {
            let t = grid().centered_coords(idx)[0];
            assert!((g.get(&[t]) - bump.get(&[t - 16])).norm() < 1e-15);
        }
    }

    #[test]
    fn sampling_recovers_cell_fourier_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bump = dilated_bump(0.2, grid()).unwrap();
        let mut b = TruncatedSequence::new(2);
        for _ in 0..10 {
            let key = vec![rng.random_range(-4..4), rng.random_range(-3..4)];
            b.insert(key, Complex64::new(rng.random(), rng.random())).unwrap();
        }
        assert!(sampling_recovery_residual(&b, &bump).unwrap() < 1e-9);
    }

    #[test]
    fn l2_norm_tracks_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let bump = dilated_bump(0.2, grid()).unwrap();
        let mut ratios = Vec::new();
        for _ in 0..20 {
            let mut b = TruncatedSequence::new(2);
            for k in -4..4 {
                b.insert(vec![k, rng.random_range(-2..3)], Complex64::new(rng.random_range(-1.0..1.0), 0.0))
                    .unwrap();
            }
            let g = modulated_lattice_sum(&b, &bump, grid()).unwrap();
            ratios.push(g.lp_norm(2.0) / b.lp_norm("2".parse().unwrap()));
        }
        // One coefficient per cell: the ratio is exactly ‖φ‖₂.
        for r in &ratios {
            assert!((r - bump.lp_norm(2.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_wide_bumps_and_bad_grids() {
        let b = TruncatedSequence::delta(vec![0, 0]);
        let wide = dilated_bump(0.6, grid()).unwrap();
        assert!(matches!(modulated_lattice_sum(&b, &wide, grid()), Err(Error::SupportOverflow(_))));
        let odd = Grid::new(1, 64, 0.3).unwrap();
        let bump = dilated_bump(0.4, odd).unwrap();
        assert!(modulated_lattice_sum(&b, &bump, odd).is_err());
        let bump = dilated_bump(0.2, grid()).unwrap();
        let far = TruncatedSequence::delta(vec![5, 0]);
        assert!(matches!(modulated_lattice_sum(&far, &bump, grid()), Err(Error::SupportOverflow(_))));
    }
}
