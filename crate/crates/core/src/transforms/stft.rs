use num_complex::Complex64;
use rayon::prelude::*;

use super::dft::{dft, translate};
use crate::error::Result;
use crate::lattice::{Grid, LatticeSignal};

/// Values `V(x, ξ)` on `(Z_N^d)²`, stored with `x` as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct StftArray {
    grid: Grid,
    data: Vec<Complex64>,
}

impl StftArray {
    pub fn from_rows(grid: Grid, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), grid.len() * grid.len());
        Self { grid, data }
    }

    /// Grid of the analysed signal; the array has `grid.len()²` entries.
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, x: &[i64], xi: &[i64]) -> Complex64 {
        self.data[self.grid.index_of(x) * self.grid.len() + self.grid.index_of(xi)]
    }

    pub fn at(&self, x_idx: usize, xi_idx: usize) -> Complex64 {
        self.data[x_idx * self.grid.len() + xi_idx]
    }

    pub fn row(&self, x_idx: usize) -> &[Complex64] {
        let l = self.grid.len();
        &self.data[x_idx * l..(x_idx + 1) * l]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `f · conj(T_x g)`, the signal whose DFT is the row `V_g f(x, ·)`.
fn windowed(f: &LatticeSignal, g: &LatticeSignal, x: &[i64]) -> Vec<Complex64> {
    let grid = f.grid();
    (0..grid.len())
        .map(|idx| {
            let t = grid.coords(idx);
            let s: Vec<i64> = t.iter().zip(x).map(|(&a, &b)| a as i64 - b).collect();
            f.values()[idx] * g.get(&s).conj()
        })
        .collect()
}

/// `V_g f(x, ξ) = alpha^d Σ_t f(t) conj(g(t - x)) e^{-2πi t·ξ/N}`.
///
/// Rows are computed independently in parallel; each row is one DFT, so the
/// result does not depend on scheduling.
pub fn stft(f: &LatticeSignal, g: &LatticeSignal) -> Result<StftArray> {
    let grid = f.grid();
    grid.ensure_same(&g.grid())?;
    let rows: Vec<Vec<Complex64>> = (0..grid.len())
        .into_par_iter()
        .map(|x_idx| {
            let x: Vec<i64> = grid.coords(x_idx).into_iter().map(|k| k as i64).collect();
            let h = LatticeSignal::new(grid, windowed(f, g, &x)).expect("same grid");
            dft(&h, false).into_values()
        })
        .collect();
    Ok(StftArray::from_rows(grid, rows.concat()))
}

/// Positions `x` (centered coordinates) where `V_g f(x, ·)` is not identically zero.
///
/// A row vanishes exactly when `f · conj(T_x g)` does, so the scan tests that
/// product instead of thresholding transformed values.
pub fn stft_support_box(f: &LatticeSignal, g: &LatticeSignal) -> Result<Vec<Vec<i64>>> {
    let grid = f.grid();
    grid.ensure_same(&g.grid())?;
    let mut out: Vec<Vec<i64>> = (0..grid.len())
        .filter_map(|x_idx| {
            let x = grid.centered_coords(x_idx);
            let h = windowed(f, g, &x);
            h.iter().any(|z| *z != Complex64::new(0.0, 0.0)).then_some(x)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `max |V_g(T_{x0} f)(x,ξ) - e^{-2πi x0·ξ/N} V_g f(x - x0, ξ)|`.
pub fn stft_translation_covariance_residual(f: &LatticeSignal, g: &LatticeSignal, x0: &[i64]) -> Result<f64> {
    let grid = f.grid();
    let shifted = stft(&translate(f, x0), g)?;
    let base = stft(f, g)?;
    let mut worst: f64 = 0.0;
    for x_idx in 0..grid.len() {
        let x: Vec<i64> = grid.coords(x_idx).into_iter().map(|k| k as i64).collect();
        let xs: Vec<i64> = x.iter().zip(x0).map(|(a, b)| a - b).collect();
        for xi_idx in 0..grid.len() {
            let xi: Vec<i64> = grid.coords(xi_idx).into_iter().map(|k| k as i64).collect();
            let dot: i64 = x0.iter().zip(&xi).map(|(a, b)| a * b).sum();
            let want = grid.phase(-dot) * base.get(&xs, &xi);
            worst = worst.max((shifted.at(x_idx, xi_idx) - want).norm());
        }
    }
    Ok(worst)
}

/// Residual of `V_g f(x,ξ) = (alpha²N)^{-d} e^{-2πi x·ξ/N} V_ĝ f̂(ξ, -x)`.
///
/// The factor `(alpha²N)^{-d}` is one on balanced grids.
pub fn fundamental_identity_residual(f: &LatticeSignal, g: &LatticeSignal) -> Result<f64> {
    let grid = f.grid();
    let direct = stft(f, g)?;
    let swapped = stft(&dft(f, false), &dft(g, false))?;
    let c = 1.0 / grid.balance_factor();
    let mut worst: f64 = 0.0;
    for x_idx in 0..grid.len() {
        let x: Vec<i64> = grid.coords(x_idx).into_iter().map(|k| k as i64).collect();
        let neg_x: Vec<i64> = x.iter().map(|k| -k).collect();
        for xi_idx in 0..grid.len() {
            let xi: Vec<i64> = grid.coords(xi_idx).into_iter().map(|k| k as i64).collect();
            let dot: i64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
            let rhs = grid.phase(-dot) * swapped.get(&xi, &neg_x) * c;
            worst = worst.max((direct.at(x_idx, xi_idx) - rhs).norm());
        }
    }
    Ok(worst)
}

/// Residual of `V_g f(x,ξ) = e^{-2πi x·ξ/N} conj(V_f g(-x, -ξ))`.
pub fn conjugate_symmetry_residual(f: &LatticeSignal, g: &LatticeSignal) -> Result<f64> {
    let grid = f.grid();
    let a = stft(f, g)?;
    let b = stft(g, f)?;
    let mut worst: f64 = 0.0;
    for x_idx in 0..grid.len() {
        let x: Vec<i64> = grid.coords(x_idx).into_iter().map(|k| k as i64).collect();
        let nx: Vec<i64> = x.iter().map(|k| -k).collect();
        for xi_idx in 0..grid.len() {
            let xi: Vec<i64> = grid.coords(xi_idx).into_iter().map(|k| k as i64).collect();
            let nxi: Vec<i64> = xi.iter().map(|k| -k).collect();
            let dot: i64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
            let rhs = grid.phase(-dot) * b.get(&nx, &nxi).conj();
            worst = worst.max((a.at(x_idx, xi_idx) - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_window_samples_the_signal() {
        let grid = Grid::new(1, 8, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = LatticeSignal::random(grid, &mut rng);
        let v = stft(&f, &LatticeSignal::delta(grid, &[0])).unwrap();
        for x in 0..8i64 {
            for xi in 0..8i64 {
                let want = f.get(&[x]) * grid.phase(-x * xi) * 0.5;
                assert!((v.get(&[x], &[xi]) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_signal_gives_zero() {
        let grid = Grid::unit(2, 4).unwrap();
        let g = LatticeSignal::constant(grid, Complex64::new(1.0, 0.0));
        assert_eq!(stft(&LatticeSignal::zeros(grid), &g).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn grids_must_agree() {
        let a = LatticeSignal::zeros(Grid::unit(1, 8).unwrap());
        let b = LatticeSignal::zeros(Grid::unit(1, 4).unwrap());
        assert!(stft(&a, &b).is_err());
    }

    #[test]
    fn identities_hold_on_unbalanced_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let grid = Grid::new(1, 16, 0.7).unwrap();
        let f = LatticeSignal::random(grid, &mut rng);
        let g = LatticeSignal::random(grid, &mut rng);
        assert!(fundamental_identity_residual(&f, &g).unwrap() < 1e-10);
        assert!(conjugate_symmetry_residual(&f, &g).unwrap() < 1e-10);
        assert!(stft_translation_covariance_residual(&f, &g, &[3]).unwrap() < 1e-10);
        assert_eq!(stft_translation_covariance_residual(&f, &g, &[0]).unwrap(), 0.0);
    }
}
