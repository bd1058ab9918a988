//! Modulation and Fourier-modulation quasi-norms.
//!
//! Both are discretized continuum norms: the plain mixed sum of STFT values is
//! multiplied by `dx^{1/p} dξ^{1/q}` (`dx = alpha^d`, `dξ = (alpha N)^{-d}`)
//! and weights are evaluated at continuum positions. With these factors
//! `‖f‖_{M^{2,2}} = ‖g‖₂ ‖f‖₂` holds exactly on every grid.

use crate::error::{Error, Result};
use crate::lattice::{ExtendedExponent, Grid, LatticeSignal, SeparableWeight};
use crate::transforms::{stft, StftArray};

use super::mixed::mixed_norm_with;

fn check_weight(grid: &Grid, w: &SeparableWeight) -> Result<()> {
    if w.dim() != 2 * grid.d {
        return Err(Error::DimensionMismatch {
            expected: 2 * grid.d,
            got: w.dim(),
        });
    }
    Ok(())
}

fn time_positions(grid: &Grid) -> Vec<Vec<f64>> {
    (0..grid.len()).map(|i| grid.position(i)).collect()
}

fn freq_positions(grid: &Grid) -> Vec<Vec<f64>> {
    let s = grid.freq_spacing();
    (0..grid.len())
        .map(|i| grid.centered_coords(i).into_iter().map(|k| k as f64 * s).collect())
        .collect()
}

/// Weight table `w[a][b]` for `(first, second)` position lists.
fn weight_table(w: &SeparableWeight, first: &[Vec<f64>], second: &[Vec<f64>]) -> Option<Vec<f64>> {
    if w.is_trivial() {
        return None;
    }
    let mut out = Vec::with_capacity(first.len() * second.len());
    let mut z = Vec::new();
    for a in first {
        for b in second {
            z.clear();
            z.extend_from_slice(a);
            z.extend_from_slice(b);
            out.push(w.eval_unchecked(&z));
        }
    }
    Some(out)
}

/// `‖V‖_{L^{p,q}_w}`: `x` inner in `L^p`, `ξ` outer in `L^q`.
pub fn stft_modulation_norm(
    v: &StftArray,
    p: ExtendedExponent,
    q: ExtendedExponent,
    w: &SeparableWeight,
) -> Result<f64> {
    let grid = v.grid();
    check_weight(&grid, w)?;
    let l = grid.len();
    let table = weight_table(w, &time_positions(&grid), &freq_positions(&grid));
    let plain = mixed_norm_with(l, l, p.p_f64(), q.p_f64(), |xi, x| {
        let m = v.at(x, xi).norm();
        match &table {
            Some(t) => m * t[x * l + xi],
            None => m,
        }
    });
    let dx = grid.cell_volume();
    let dxi = grid.freq_spacing().powi(grid.d as i32);
    Ok(plain * dx.powf(p.recip_f64()) * dxi.powf(q.recip_f64()))
}

/// Mixed norm of `G(x, ξ) = V(ξ, -x)`: `x` inner, `ξ` outer, weight `w(x, ξ)`.
///
/// Here `x` runs over the frequency slot of `V`, so the inner Riemann factor
/// is `dξ^{1/p}` and the outer one `dx^{1/q}`.
pub fn stft_fourier_modulation_norm(
    v: &StftArray,
    p: ExtendedExponent,
    q: ExtendedExponent,
    w: &SeparableWeight,
) -> Result<f64> {
    let grid = v.grid();
    check_weight(&grid, w)?;
    let l = grid.len();
    // x ranges over V's frequency slot, ξ over V's time slot.
    let neg: Vec<usize> = (0..l)
        .map(|i| {
            let c: Vec<i64> = grid.coords(i).into_iter().map(|k| -(k as i64)).collect();
            grid.index_of(&c)
        })
        .collect();
    let table = weight_table(w, &freq_positions(&grid), &time_positions(&grid));
    let plain = mixed_norm_with(l, l, p.p_f64(), q.p_f64(), |xi, x| {
        let m = v.at(xi, neg[x]).norm();
        match &table {
            Some(t) => m * t[x * l + xi],
            None => m,
        }
    });
    let dx = grid.cell_volume();
    let dxi = grid.freq_spacing().powi(grid.d as i32);
    Ok(plain * dxi.powf(p.recip_f64()) * dx.powf(q.recip_f64()))
}

fn ensure_window(window: &LatticeSignal) -> Result<()> {
    if window.is_zero() {
        Err(Error::ZeroWindow)
    } else {
        Ok(())
    }
}

/// `‖f‖_{M^{p,q}_w}` computed with the given window.
pub fn modulation_norm(
    f: &LatticeSignal,
    window: &LatticeSignal,
    p: ExtendedExponent,
    q: ExtendedExponent,
    w: &SeparableWeight,
) -> Result<f64> {
    ensure_window(window)?;
    check_weight(&f.grid(), w)?;
    stft_modulation_norm(&stft(f, window)?, p, q, w)
}

/// `‖f‖_{FM^{p,q}_w}`, read from `V_window f(ξ, -x)`.
pub fn fourier_modulation_norm(
    f: &LatticeSignal,
    window: &LatticeSignal,
    p: ExtendedExponent,
    q: ExtendedExponent,
    w: &SeparableWeight,
) -> Result<f64> {
    ensure_window(window)?;
    check_weight(&f.grid(), w)?;
    stft_fourier_modulation_norm(&stft(f, window)?, p, q, w)
}
