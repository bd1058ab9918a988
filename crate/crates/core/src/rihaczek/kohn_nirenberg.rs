use num_complex::Complex64;

use super::distribution::{check_family, rihaczek, PhaseSpaceSignal, Slots};
use crate::error::{Error, Result};
use crate::lattice::LatticeSignal;
use crate::transforms::dft;

/// `(alpha N)^{-d·m}`, the frequency cell volume `dξ⃗`; makes `σ ≡ 1` the product map.
pub fn kn_factor(grid: &crate::lattice::Grid, m: usize) -> f64 {
    grid.freq_spacing().powi((grid.d * m) as i32)
}

fn check_symbol(sigma: &PhaseSpaceSignal, fs: &[LatticeSignal]) -> Result<()> {
    if sigma.m() != fs.len() {
        return Err(Error::DimensionMismatch {
            expected: sigma.m(),
            got: fs.len(),
        });
    }
    let base = sigma.base_grid();
    for f in fs {
        base.ensure_same(&f.grid())?;
    }
    Ok(())
}

/// `K_σ(f⃗)(x) = (alpha N)^{-d·m} Σ_{ξ⃗} σ(x, ξ⃗) ∏ f̂_j(ξ_j) e^{2πi x·Σξ_j/N}`.
pub fn kohn_nirenberg_apply(sigma: &PhaseSpaceSignal, fs: &[LatticeSignal]) -> Result<LatticeSignal> {
    check_symbol(sigma, fs)?;
    let m = fs.len();
    let grid = sigma.base_grid();
    let slots = Slots::new(grid);
    let l = slots.len();
    let tail = l.pow(m as u32);
    let spectra: Vec<LatticeSignal> = fs.iter().map(|f| dft(f, false)).collect();
    // ∏ f̂_j(ξ_j) and Σξ_j depend only on ξ⃗.
    let mut prods = Vec::with_capacity(tail);
    let mut sums = Vec::with_capacity(tail);
    let mut idx = Vec::new();
    for rest in 0..tail {
        slots.split(rest, m, &mut idx);
        let mut p = Complex64::new(1.0, 0.0);
        let mut s = 0usize;
        for (j, &xi) in idx.iter().enumerate() {
            p *= spectra[j].values()[xi];
            s = slots.add(s, xi);
        }
        prods.push(p);
        sums.push(s);
    }
    let c = kn_factor(&grid, m);
    let values: Vec<Complex64> = (0..l)
        .map(|x| {
            let row = &sigma.signal().values()[x * tail..(x + 1) * tail];
            let acc: Complex64 = row
                .iter()
                .zip(&prods)
                .zip(&sums)
                .map(|((s, p), &xs)| s * p * grid.phase(slots.dot(x, xs)))
                .sum();
            acc * c
        })
        .collect();
    LatticeSignal::new(grid, values)
}

/// `⟨σ, τ⟩ = alpha^d (alpha N)^{-d·m} Σ σ · conj(τ)`, the pairing with measure `dx dξ⃗`.
pub fn phase_space_inner(a: &PhaseSpaceSignal, b: &PhaseSpaceSignal) -> Result<Complex64> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch {
            expected: a.m(),
            got: b.m(),
        });
    }
    a.signal().grid().ensure_same(&b.signal().grid())?;
    let base = a.base_grid();
    let s: Complex64 = a
        .signal()
        .values()
        .iter()
        .zip(b.signal().values())
        .map(|(x, y)| x * y.conj())
        .sum();
    Ok(s * base.cell_volume() * kn_factor(&base, a.m()))
}

/// `|⟨K_σ f⃗, g⟩ - ⟨σ, R_m(g, f⃗)⟩|`.
pub fn duality_residual(sigma: &PhaseSpaceSignal, fs: &[LatticeSignal], g: &LatticeSignal) -> Result<f64> {
    check_family(g, fs)?;
    let lhs = kohn_nirenberg_apply(sigma, fs)?.inner(g)?;
    let rhs = phase_space_inner(sigma, &rihaczek(g, fs)?)?;
    Ok((lhs - rhs).norm())
}
