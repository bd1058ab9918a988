use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of a periodic lattice `(Z/NZ)^d` with sample spacing `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
}

impl Grid {
    pub fn new(d: usize, n: usize, alpha: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSignal("dimension must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidSignal("period must be positive".into()));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidSignal(format!("spacing {alpha} must be positive")));
        }
        Ok(Self { d, n, alpha })
    }

    /// Grid with `alpha = N^{-1/2}`: time and frequency spacings coincide and
    /// `x·ξ = k·n/N` holds exactly for index pairs.
    pub fn balanced(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, (n as f64).powf(-0.5))
    }

    pub fn unit(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, 1.0)
    }

    /// Number of points `N^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Spacing of the dual (frequency) lattice, `1/(alpha·N)`.
    pub fn freq_spacing(&self) -> f64 {
        1.0 / (self.alpha * self.n as f64)
    }

    /// `alpha^d`, the Riemann cell volume.
    pub fn cell_volume(&self) -> f64 {
        self.alpha.powi(self.d as i32)
    }

    /// `(alpha²·N)^d`; equals one on balanced grids.
    pub fn balance_factor(&self) -> f64 {
        (self.alpha * self.alpha * self.n as f64).powi(self.d as i32)
    }

    /// Same `N` and `alpha`, different dimension.
    pub fn with_dim(&self, d: usize) -> Self {
        Self { d, ..*self }
    }

    pub fn wrap(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Representative of `k` in `[-N/2, N/2)`.
    pub fn center(&self, k: usize) -> i64 {
        let n = self.n as i64;
        let k = k as i64 % n;
        if k >= (n + 1) / 2 {
            k - n
        } else {
            k
        }
    }

    /// Row-major flat index of a (possibly out-of-range) lattice point.
    pub fn index_of(&self, point: &[i64]) -> usize {
        debug_assert_eq!(point.len(), self.d);
        point
            .iter()
            .fold(0usize, |acc, &k| acc * self.n + self.wrap(k))
    }

    /// Coordinates in `[0, N)` of a flat index.
    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        out
    }

    /// Coordinates in `[-N/2, N/2)` of a flat index.
    pub fn centered_coords(&self, idx: usize) -> Vec<i64> {
        self.coords(idx).into_iter().map(|k| self.center(k)).collect()
    }

    /// Continuum position `alpha·k` of a flat index, using centered coordinates.
    pub fn position(&self, idx: usize) -> Vec<f64> {
        self.centered_coords(idx)
            .into_iter()
            .map(|k| k as f64 * self.alpha)
            .collect()
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.d == other.d && self.n == other.n && (self.alpha - other.alpha).abs() <= 1e-15 * self.alpha
    }

    pub(crate) fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// Index phase `e^{2πi·t/N}` for an integer `t`.
    pub fn phase(&self, t: i64) -> Complex64 {
        let r = t.rem_euclid(self.n as i64) as f64 / self.n as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r)
    }
}

/// Complex samples on a periodic lattice, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSignal {
    grid: Grid,
    values: Vec<Complex64>,
}

impl LatticeSignal {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Unit impulse at a lattice point.
    pub fn delta(grid: Grid, point: &[i64]) -> Self {
        let mut s = Self::zeros(grid);
        s.values[grid.index_of(point)] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn constant(grid: Grid, c: Complex64) -> Self {
        Self {
            grid,
            values: vec![c; grid.len()],
        }
    }

    /// Samples `f` at centered integer coordinates.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[i64]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.centered_coords(i))).collect();
        Self { grid, values }
    }

    /// Samples `f` at continuum positions `alpha·k`.
    pub fn from_positions(grid: Grid, mut f: impl FnMut(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        Self { grid, values }
    }

    /// `e^{-π|x/width|²}` at continuum positions `x = alpha·k`.
    pub fn gaussian(grid: Grid, width: f64) -> Self {
        Self::from_positions(grid, |x| {
            let r2: f64 = x.iter().map(|v| (v / width).powi(2)).sum();
            Complex64::new((-std::f64::consts::PI * r2).exp(), 0.0)
        })
    }

    /// Entries uniform in the unit square of the complex plane.
    pub fn random<R: Rng + ?Sized>(grid: Grid, rng: &mut R) -> Self {
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        Self { grid, values }
    }

    /// Random entries supported on the centered box `[-r, r]^d`.
    pub fn random_supported<R: Rng + ?Sized>(grid: Grid, radius: i64, rng: &mut R) -> Self {
        Self::from_fn(grid, |k| {
            if k.iter().all(|c| c.abs() <= radius) {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn d(&self) -> usize {
        self.grid.d
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn alpha(&self) -> f64 {
        self.grid.alpha
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Periodic read.
    pub fn get(&self, point: &[i64]) -> Complex64 {
        self.values[self.grid.index_of(point)]
    }

    pub fn set(&mut self, point: &[i64], value: Complex64) {
        let i = self.grid.index_of(point);
        self.values[i] = value;
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `f(-t)`.
    pub fn reflect(&self) -> Self {
        let g = self.grid;
        Self::from_fn(g, |k| {
            let neg: Vec<i64> = k.iter().map(|&c| -c).collect();
            self.get(&neg)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `L^p` quasi-norm with the Riemann factor `alpha^{d/p}`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let cell = self.grid.cell_volume();
        if p.is_infinite() {
            self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
        } else {
            (self.values.iter().map(|z| z.norm().powf(p)).sum::<f64>() * cell).powf(1.0 / p)
        }
    }

    /// Plain `ℓ^2` norm of the samples, no Riemann factor.
    pub fn l2_plain(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨f, g⟩ = alpha^d Σ f·conj(g)`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.cell_volume())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_wrong_length_and_nan() {
        let g = Grid::unit(1, 4).unwrap();
        assert!(LatticeSignal::new(g, vec![Complex64::new(0.0, 0.0); 3]).is_err());
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(LatticeSignal::new(g, v), Err(Error::NonFinite(2))));
    }

    #[test]
    fn periodic_reads() {
        let g = Grid::unit(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = LatticeSignal::random(g, &mut rng);
        for idx in 0..g.len() {
            let k = g.centered_coords(idx);
            for axis in 0..2 {
                let mut shifted = k.clone();
                shifted[axis] += 8;
                assert_eq!(f.get(&k), f.get(&shifted));
                shifted[axis] -= 24;
                assert_eq!(f.get(&k), f.get(&shifted));
            }
        }
    }

    #[test]
    fn centered_coordinates() {
        let g = Grid::unit(1, 8).unwrap();
        let c: Vec<i64> = (0..8).map(|i| g.center(i)).collect();
        assert_eq!(c, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        let g = Grid::unit(1, 5).unwrap();
        let c: Vec<i64> = (0..5).map(|i| g.center(i)).collect();
        assert_eq!(c, vec![0, 1, 2, -2, -1]);
    }

    #[test]
    fn index_round_trip() {
        let g = Grid::unit(2, 6).unwrap();
        for i in 0..g.len() {
            let k: Vec<i64> = g.coords(i).into_iter().map(|c| c as i64).collect();
            assert_eq!(g.index_of(&k), i);
            assert_eq!(g.index_of(&g.centered_coords(i)), i);
        }
    }

    #[test]
    fn riemann_norms() {
        let g = Grid::new(1, 4, 0.5).unwrap();
        let f = LatticeSignal::constant(g, Complex64::new(1.0, 0.0));
        assert!((f.lp_norm(1.0) - 2.0).abs() < 1e-15);
        assert!((f.lp_norm(2.0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(f.lp_norm(f64::INFINITY), 1.0);
        assert!((f.inner(&f).unwrap().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn balanced_grid_factor() {
        let g = Grid::balanced(2, 16).unwrap();
        assert!((g.balance_factor() - 1.0).abs() < 1e-12);
        assert!((g.freq_spacing() - g.alpha).abs() < 1e-15);
    }
}
