use num_complex::Complex64;
use rayon::prelude::*;

use super::distribution::{check_family, rihaczek, Slots};
use crate::error::{Error, Result};
use crate::lattice::LatticeSignal;
use crate::transforms::{stft, StftArray};

/// `(alpha²N)^{d·m}`, the lattice factor in the closed form; one on balanced grids.
pub fn closed_form_factor(grid: &crate::lattice::Grid, m: usize) -> f64 {
    grid.balance_factor().powi(m as i32)
}

/// Window STFTs `V_{φ_0} g` and `V_{φ_j} f_j` used by the closed form.
pub(crate) fn factor_stfts(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    windows: &[LatticeSignal],
) -> Result<(StftArray, Vec<StftArray>)> {
    check_family(g, fs)?;
    if windows.len() != fs.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: fs.len() + 1,
            got: windows.len(),
        });
    }
    for w in windows {
        g.grid().ensure_same(&w.grid())?;
    }
    let a = stft(g, &windows[0])?;
    let bs = fs
        .iter()
        .zip(&windows[1..])
        .map(|(f, w)| stft(f, w))
        .collect::<Result<Vec<_>>>()?;
    Ok((a, bs))
}

/// `V_Φ R_m(g, f⃗)` with `Φ = R_m(φ_0, …, φ_m)`, from one-dimensional STFTs:
///
/// `V_Φ R((z_0, z⃗), (ζ_0, ζ⃗)) = c · e^{-2πi z⃗·ζ⃗/N} V_{φ_0}g(z_0, ζ_0 + Σz_j) ∏ conj(V_{φ_j}f_j(z_0 + ζ_j, z_j))`
///
/// with `c = (alpha²N)^{d·m}`. The result lives on the `(m+1)·d` lattice.
pub fn rihaczek_stft_closed_form(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    windows: &[LatticeSignal],
) -> Result<StftArray> {
    let (a, bs) = factor_stfts(g, fs, windows)?;
    let m = fs.len();
    let grid = g.grid();
    let slots = Slots::new(grid);
    let l = slots.len();
    let big_len = l.pow((m + 1) as u32);
    let c = closed_form_factor(&grid, m);
    let rows: Vec<Vec<Complex64>> = (0..big_len)
        .into_par_iter()
        .map(|x_flat| {
            let mut zs = Vec::new();
            let mut zetas = Vec::new();
            slots.split(x_flat, m + 1, &mut zs);
            let z0 = zs[0];
            let sum_z = zs[1..].iter().fold(0usize, |acc, &z| slots.add(acc, z));
            (0..big_len)
                .map(|xi_flat| {
                    slots.split(xi_flat, m + 1, &mut zetas);
                    let mut value = a.at(z0, slots.add(zetas[0], sum_z)) * c;
                    let mut dot = 0i64;
                    for j in 1..=m {
                        value *= bs[j - 1].at(slots.add(z0, zetas[j]), zs[j]).conj();
                        dot += slots.dot(zs[j], zetas[j]);
                    }
                    value * grid.phase(-dot)
                })
                .collect()
        })
        .collect();
    Ok(StftArray::from_rows(grid.with_dim((m + 1) * grid.d), rows.concat()))
}

/// Direct `(m+1)·d`-dimensional STFT of `R_m(g, f⃗)` against `R_m(φ⃗)`.
pub fn rihaczek_stft_direct(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    windows: &[LatticeSignal],
) -> Result<StftArray> {
    if windows.len() != fs.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: fs.len() + 1,
            got: windows.len(),
        });
    }
    let r = rihaczek(g, fs)?;
    let phi = rihaczek(&windows[0], &windows[1..])?;
    stft(r.signal(), phi.signal())
}

/// `max |closed form - direct|`.
pub fn closed_form_residual(g: &LatticeSignal, fs: &[LatticeSignal], windows: &[LatticeSignal]) -> Result<f64> {
    let a = rihaczek_stft_closed_form(g, fs, windows)?;
    let b = rihaczek_stft_direct(g, fs, windows)?;
    Ok(a.max_abs_diff(&b))
}
