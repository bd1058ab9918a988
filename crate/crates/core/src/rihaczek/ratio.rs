//! Quasi-norms of `R_m(g, f⃗)` and the empirical boundedness ratio.
//!
//! The closed form `|V_Φ R| = c·|V_{φ_0}g(z_0, ζ_0+Σz_j)| ∏ |V_{φ_j}f_j(z_0+ζ_j, z_j)|`
//! lets most unweighted norms be computed from the factor STFTs alone:
//!
//! * modulation, `p = q`: the change of variables `(ζ_0, ζ⃗) ↦ (ζ_0+Σz_j, z_0+ζ⃗)`
//!   splits the sum into `‖V_{φ_0}g‖_p ∏ ‖V_{φ_j}f_j‖_p`;
//! * modulation, `m = 1`: the inner sum is a 2-D correlation, done by FFT;
//! * Fourier-modulation: the inner sum over `(ζ_0, ζ⃗)` separates completely.
//!
//! Everything else goes through the full `2(m+1)d`-dimensional array.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::closed_form::{closed_form_factor, factor_stfts, rihaczek_stft_closed_form, rihaczek_stft_direct};
use crate::error::{Error, Result};
use crate::lattice::{ExponentTuple, ExtendedExponent, Grid, LatticeSignal, SeparableWeight};
use crate::norms::{lp_reduce, stft_fourier_modulation_norm, stft_modulation_norm, wiener_amalgam_norm, PartitionOfUnity};
use crate::transforms::fft::{dft_nd, Direction};
use crate::transforms::StftArray;

/// Largest `2(m+1)d`-dimensional array formed by the full-array paths.
pub const FULL_ARRAY_LIMIT: usize = 1 << 26;

/// Target space of the Rihaczek distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Modulation,
    FourierModulation,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Modulation => "modulation",
            Target::FourierModulation => "fourier_modulation",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "modulation" | "m" => Ok(Target::Modulation),
            "fourier_modulation" | "fm" => Ok(Target::FourierModulation),
            _ => Err(Error::InvalidArgument(format!("unknown target space {s:?}"))),
        }
    }
}

/// Evaluation strategy for [`rihaczek_norm_with_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormPath {
    /// Pick the cheapest exact path.
    Auto,
    /// STFT of the materialized distribution against `R_m(φ⃗)`.
    Direct,
    /// Full array from the closed form.
    ClosedForm,
    /// Product of factor norms (modulation, `p = q`, unweighted).
    Factorized,
    /// FFT correlation (modulation, `m = 1`, finite `p`, unweighted).
    Correlation,
    /// Separated sums (Fourier-modulation, unweighted).
    Separable,
}

fn riemann(big: &Grid, target: Target, p: ExtendedExponent, q: ExtendedExponent) -> f64 {
    let dx = big.cell_volume();
    let dxi = big.freq_spacing().powi(big.d as i32);
    match target {
        Target::Modulation => dx.powf(p.recip_f64()) * dxi.powf(q.recip_f64()),
        Target::FourierModulation => dxi.powf(p.recip_f64()) * dx.powf(q.recip_f64()),
    }
}

fn full_array_norm(
    v: &StftArray,
    p: ExtendedExponent,
    q: ExtendedExponent,
    target: Target,
    omega: &SeparableWeight,
) -> Result<f64> {
    match target {
        Target::Modulation => stft_modulation_norm(v, p, q, omega),
        Target::FourierModulation => stft_fourier_modulation_norm(v, p, q, omega),
    }
}

fn magnitudes(v: &StftArray) -> Vec<f64> {
    v.data().iter().map(|z| z.norm()).collect()
}

fn factorized(a: &StftArray, bs: &[StftArray], p: f64) -> f64 {
    let mut out = lp_reduce(magnitudes(a), p);
    for b in bs {
        out *= lp_reduce(magnitudes(b), p);
    }
    out
}

/// `Σ_{a,b} C(a,b)^{q/p}` with `C(a,b) = Σ_{s,t} A^p(s,t) B^p(s+a, t+b)`.
fn correlation(a: &StftArray, b: &StftArray, p: f64, q: f64) -> f64 {
    let grid = a.grid();
    let (n, d2) = (grid.n, 2 * grid.d);
    let mut fa: Vec<Complex64> = a.data().iter().map(|z| Complex64::new(z.norm().powf(p), 0.0)).collect();
    let mut fb: Vec<Complex64> = b.data().iter().map(|z| Complex64::new(z.norm().powf(p), 0.0)).collect();
    dft_nd(&mut fa, n, d2, Direction::Forward);
    dft_nd(&mut fb, n, d2, Direction::Forward);
    let mut prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x.conj() * y).collect();
    dft_nd(&mut prod, n, d2, Direction::Backward);
    let scale = 1.0 / prod.len() as f64;
    let inner = prod.iter().map(|c| (c.re * scale).max(0.0).powf(1.0 / p));
    lp_reduce(inner, q)
}

fn separable(a: &StftArray, bs: &[StftArray], p: f64, q: f64) -> f64 {
    let l = a.grid().len();
    let rows = (0..l).map(|z0| lp_reduce(a.row(z0).iter().map(|v| v.norm()), p));
    let mut out = lp_reduce(rows, q);
    for b in bs {
        let cols = (0..l).map(|z| lp_reduce((0..l).map(|s| b.at(s, z).norm()), p));
        out *= lp_reduce(cols, q);
    }
    out
}

/// Target quasi-norm of `R_m(g, f⃗)` with window `Φ = R_m(φ⃗)` on the `(m+1)·d` lattice.
pub fn rihaczek_norm(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    windows: &[LatticeSignal],
    p: ExtendedExponent,
    q: ExtendedExponent,
    target: Target,
    omega: Option<&SeparableWeight>,
) -> Result<f64> {
    rihaczek_norm_with_path(g, fs, windows, p, q, target, omega, NormPath::Auto)
}

#[allow(clippy::too_many_arguments)]
pub fn rihaczek_norm_with_path(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    windows: &[LatticeSignal],
    p: ExtendedExponent,
    q: ExtendedExponent,
    target: Target,
    omega: Option<&SeparableWeight>,
    path: NormPath,
) -> Result<f64> {
    let m = fs.len();
    let grid = g.grid();
    let big = grid.with_dim((m + 1) * grid.d);
    if windows.iter().any(|w| w.is_zero()) {
        return Err(Error::ZeroWindow);
    }
    let trivial = omega.is_none_or(|w| w.is_trivial());
    if let Some(w) = omega {
        if w.dim() != 2 * big.d {
            return Err(Error::DimensionMismatch {
                expected: 2 * big.d,
                got: w.dim(),
            });
        }
    }
    let path = match path {
        NormPath::Auto if !trivial => NormPath::ClosedForm,
        NormPath::Auto => match target {
            Target::FourierModulation => NormPath::Separable,
            Target::Modulation if p == q => NormPath::Factorized,
            Target::Modulation if m == 1 && !p.is_infinite() => NormPath::Correlation,
            Target::Modulation => NormPath::ClosedForm,
        },
        other => other,
    };
    let fast_ok = match path {
        NormPath::Factorized => trivial && target == Target::Modulation && p == q,
        NormPath::Correlation => trivial && target == Target::Modulation && m == 1 && !p.is_infinite(),
        NormPath::Separable => trivial && target == Target::FourierModulation,
        _ => true,
    };
    if !fast_ok {
        return Err(Error::InvalidArgument(format!("path {path:?} does not apply to this norm")));
    }
    let (pf, qf) = (p.p_f64(), q.p_f64());
    match path {
        NormPath::Direct | NormPath::ClosedForm => {
            let size = big.len().saturating_mul(big.len());
            if size > FULL_ARRAY_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "full phase-space array of {size} entries exceeds the limit {FULL_ARRAY_LIMIT}"
                )));
            }
            let v = if path == NormPath::Direct {
                rihaczek_stft_direct(g, fs, windows)?
            } else {
                rihaczek_stft_closed_form(g, fs, windows)?
            };
            let w = omega.cloned().unwrap_or_else(|| SeparableWeight::trivial(2 * big.d));
            full_array_norm(&v, p, q, target, &w)
        }
        _ => {
            let (a, bs) = factor_stfts(g, fs, windows)?;
            let plain = match path {
                NormPath::Factorized => factorized(&a, &bs, pf),
                NormPath::Correlation => correlation(&a, &bs[0], pf, qf),
                _ => separable(&a, &bs, pf, qf),
            };
            Ok(plain * closed_form_factor(&grid, m) * riemann(&big, target, p, q))
        }
    }
}

/// How the inputs of the ratio are measured.
#[derive(Debug, Clone, PartialEq)]
pub enum Denominator {
    /// `‖·‖_{L^{p_j}}`, for inputs supported in one cell.
    Lebesgue,
    /// `‖·‖_{W(L^{p_j}, L^{q_j}_{μ_j})}` over the given partition.
    Wiener(PartitionOfUnity),
}

/// Windows, target space and input measurement for [`boundedness_ratio`].
#[derive(Debug, Clone)]
pub struct RatioSetup {
    pub windows: Vec<LatticeSignal>,
    pub target: Target,
    pub denominator: Denominator,
    /// Weight on `R^{2(m+1)d}` for the target norm.
    pub omega: Option<SeparableWeight>,
    /// Weights `μ_j` on `R^d` for the Wiener norms.
    pub mus: Option<Vec<SeparableWeight>>,
}

impl RatioSetup {
    /// Gaussian windows `e^{-π|x/width|²}` for all `m+1` slots.
    pub fn gaussian(grid: Grid, m: usize, width: f64, target: Target, denominator: Denominator) -> Self {
        Self {
            windows: vec![LatticeSignal::gaussian(grid, width); m + 1],
            target,
            denominator,
            omega: None,
            mus: None,
        }
    }
}

/// `‖R_m(g, f⃗)‖_target / (‖g‖_{X_0} ∏ ‖f_j‖_{X_j})`.
pub fn boundedness_ratio(
    g: &LatticeSignal,
    fs: &[LatticeSignal],
    tuple: &ExponentTuple,
    setup: &RatioSetup,
) -> Result<f64> {
    tuple.validate()?;
    if fs.len() != tuple.m {
        return Err(Error::DimensionMismatch {
            expected: tuple.m,
            got: fs.len(),
        });
    }
    let num = rihaczek_norm(g, fs, &setup.windows, tuple.p, tuple.q, setup.target, setup.omega.as_ref())?;
    let mut den = 1.0;
    for (j, arg) in std::iter::once(g).chain(fs).enumerate() {
        let v = match &setup.denominator {
            Denominator::Lebesgue => arg.lp_norm(tuple.pj[j].p_f64()),
            Denominator::Wiener(part) => {
                let trivial = SeparableWeight::trivial(arg.d());
                let mu = setup.mus.as_ref().map(|m| &m[j]).unwrap_or(&trivial);
                wiener_amalgam_norm(arg, part, tuple.pj[j], tuple.qj[j], mu)?
            }
        };
        if v == 0.0 {
            return Err(Error::ZeroDenominator(format!("input {j} has zero norm")));
        }
        den *= v;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(s: &str) -> ExtendedExponent {
        s.parse().unwrap()
    }

    #[test]
    fn fast_paths_match_full_arrays() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let cases = [
            (1, Grid::balanced(1, 8).unwrap()),
            (1, Grid::new(1, 8, 0.8).unwrap()),
            (2, Grid::new(1, 4, 0.6).unwrap()),
        ];
        let exps = [("1", "1"), ("2", "2"), ("1/2", "1/2"), ("inf", "inf"), ("1", "2"), ("3", "1/2"), ("inf", "1")];
        for (m, grid) in cases {
            let g = LatticeSignal::random(grid, &mut rng);
            let fs: Vec<_> = (0..m).map(|_| LatticeSignal::random(grid, &mut rng)).collect();
            let ws: Vec<_> = (0..=m).map(|_| LatticeSignal::random(grid, &mut rng)).collect();
            for (p, q) in exps {
                for target in [Target::Modulation, Target::FourierModulation] {
                    let full = rihaczek_norm_with_path(&g, &fs, &ws, e(p), e(q), target, None, NormPath::Direct).unwrap();
                    let cf = rihaczek_norm_with_path(&g, &fs, &ws, e(p), e(q), target, None, NormPath::ClosedForm).unwrap();
                    let auto = rihaczek_norm(&g, &fs, &ws, e(p), e(q), target, None).unwrap();
                    assert!((full - cf).abs() < 1e-9 * full, "{m} {p} {q} {target}");
                    assert!((full - auto).abs() < 1e-9 * full, "{m} {p} {q} {target}: {full} {auto}");
                }
            }
        }
    }

    #[test]
    fn weighted_norms_use_the_full_array() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let grid = Grid::balanced(1, 4).unwrap();
        let g = LatticeSignal::random(grid, &mut rng);
        let fs = vec![LatticeSignal::random(grid, &mut rng)];
        let ws = vec![LatticeSignal::gaussian(grid, 1.0); 2];
        let w = SeparableWeight::uniform_blocks(1, &[1.0, 0.0, 0.0, -1.0]);
        let a = rihaczek_norm(&g, &fs, &ws, e("1"), e("2"), Target::Modulation, Some(&w)).unwrap();
        let b = rihaczek_norm_with_path(&g, &fs, &ws, e("1"), e("2"), Target::Modulation, Some(&w), NormPath::Direct).unwrap();
        assert!((a - b).abs() < 1e-9 * b);
        assert!(rihaczek_norm_with_path(&g, &fs, &ws, e("1"), e("2"), Target::Modulation, Some(&w), NormPath::Factorized).is_err());
    }

    #[test]
    fn all_two_ratio_is_stable_across_resolutions() {
        let tuple = ExponentTuple::uniform(1, e("2"));
        let mut ratios = Vec::new();
        for n in [8, 16, 32] {
            let grid = Grid::balanced(1, n).unwrap();
            let step = (1..=n).find(|s| n % s == 0 && *s as f64 * grid.alpha >= 1.0).unwrap();
            let part = PartitionOfUnity::new(grid, step).unwrap();
            let setup = RatioSetup::gaussian(grid, 1, 1.0, Target::Modulation, Denominator::Wiener(part));
            let h = LatticeSignal::gaussian(grid, 0.7);
            ratios.push(boundedness_ratio(&h, std::slice::from_ref(&h), &tuple, &setup).unwrap());
        }
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
        assert!(hi / lo < 1.2, "{ratios:?}");
    }

    #[test]
    fn zero_input_is_rejected() {
        let grid = Grid::balanced(1, 8).unwrap();
        let setup = RatioSetup::gaussian(grid, 1, 1.0, Target::Modulation, Denominator::Lebesgue);
        let z = LatticeSignal::zeros(grid);
        let tuple = ExponentTuple::uniform(1, e("2"));
        assert!(matches!(
            boundedness_ratio(&z, std::slice::from_ref(&z), &tuple, &setup),
            Err(Error::ZeroDenominator(_))
        ));
    }
}
