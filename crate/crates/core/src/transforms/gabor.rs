use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::dft::dft;
use super::fft::{dft_nd, Direction};
use crate::error::{Error, Result};
use crate::lattice::{Grid, LatticeSignal};

/// Largest `N^d` for which the frame operator is formed as a dense matrix.
pub const DENSE_LIMIT: usize = 1024;

/// `{T_{a·k} M_{b·n} g}` with `k ∈ Z_{N/a}^d`, `n ∈ Z_{N/b}^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborSystem {
    pub window: LatticeSignal,
    pub a_step: usize,
    pub b_step: usize,
}

/// Coefficients `c(k, n)` stored with `k` as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborCoefficients {
    pub time_count: usize,
    pub freq_count: usize,
    pub d: usize,
    pub values: Vec<Complex64>,
}

impl GaborCoefficients {
    pub fn zeros(sys: &GaborSystem) -> Self {
        let (time_count, freq_count) = sys.counts();
        Self {
            time_count,
            freq_count,
            d: sys.window.d(),
            values: vec![Complex64::new(0.0, 0.0); time_count.pow(sys.window.d() as u32) * freq_count.pow(sys.window.d() as u32)],
        }
    }

    fn row_len(&self) -> usize {
        self.freq_count.pow(self.d as u32)
    }

    pub fn row(&self, k_idx: usize) -> &[Complex64] {
        let l = self.row_len();
        &self.values[k_idx * l..(k_idx + 1) * l]
    }
}

impl GaborSystem {
    pub fn new(window: LatticeSignal, a_step: usize, b_step: usize) -> Result<Self> {
        let n = window.n();
        for step in [a_step, b_step] {
            if step == 0 || !n.is_multiple_of(step) {
                return Err(Error::StepDoesNotDivide { step, n });
            }
        }
        Ok(Self { window, a_step, b_step })
    }

    pub fn grid(&self) -> Grid {
        self.window.grid()
    }

    /// Per-axis numbers of time and frequency positions.
    pub fn counts(&self) -> (usize, usize) {
        let n = self.window.n();
        (n / self.a_step, n / self.b_step)
    }

    fn sub_grid(&self, count: usize) -> Grid {
        Grid::unit(self.window.d(), count).expect("positive count")
    }

    /// `T_{a·k} M_{b·n} g` as a signal.
    pub fn atom(&self, k: &[i64], n: &[i64]) -> LatticeSignal {
        let grid = self.grid();
        let (a, b) = (self.a_step as i64, self.b_step as i64);
        LatticeSignal::from_fn(grid, |t| {
            let s: Vec<i64> = t.iter().zip(k).map(|(t, k)| t - a * k).collect();
            let dot: i64 = s.iter().zip(n).map(|(s, n)| s * b * n).sum();
            grid.phase(dot) * self.window.get(&s)
        })
    }
}

/// `c(k, n) = ⟨f, T_{a·k} M_{b·n} g⟩`.
pub fn gabor_analysis(f: &LatticeSignal, sys: &GaborSystem) -> Result<GaborCoefficients> {
    let grid = f.grid();
    grid.ensure_same(&sys.grid())?;
    let (a, b) = (sys.a_step as i64, sys.b_step as i64);
    let mut out = GaborCoefficients::zeros(sys);
    let kg = sys.sub_grid(out.time_count);
    let ng = sys.sub_grid(out.freq_count);
    let row_len = out.row_len();
    for k_idx in 0..kg.len() {
        let k: Vec<i64> = kg.coords(k_idx).into_iter().map(|v| v as i64).collect();
        let h = LatticeSignal::from_fn(grid, |t| {
            let s: Vec<i64> = t.iter().zip(&k).map(|(t, k)| t - a * k).collect();
            f.get(t) * sys.window.get(&s).conj()
        });
        let spectrum = dft(&h, false);
        for n_idx in 0..ng.len() {
            let n: Vec<i64> = ng.coords(n_idx).into_iter().map(|v| v as i64).collect();
            let freq: Vec<i64> = n.iter().map(|v| v * b).collect();
            let dot: i64 = k.iter().zip(&freq).map(|(k, f)| a * k * f).sum();
            out.values[k_idx * row_len + n_idx] = grid.phase(dot) * spectrum.get(&freq);
        }
    }
    Ok(out)
}

/// `Σ_{k,n} c(k, n) T_{a·k} M_{b·n} γ`.
pub fn gabor_synthesis(c: &GaborCoefficients, sys: &GaborSystem) -> Result<LatticeSignal> {
    let grid = sys.grid();
    let (tc, fc) = sys.counts();
    if c.time_count != tc || c.freq_count != fc || c.d != grid.d {
        return Err(Error::InvalidArgument("coefficient shape does not match the Gabor system".into()));
    }
    let (a, b) = (sys.a_step as i64, sys.b_step as i64);
    let kg = sys.sub_grid(tc);
    let ng = sys.sub_grid(fc);
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
    for k_idx in 0..kg.len() {
        let k: Vec<i64> = kg.coords(k_idx).into_iter().map(|v| v as i64).collect();
        let row = c.row(k_idx);
        if row.iter().all(|z| z.norm() == 0.0) {
            continue;
        }
        // Σ_n c(k,n) e^{2πi (t - a·k)·b·n/N} as an unnormalized inverse DFT.
        let mut spread = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (n_idx, &coef) in row.iter().enumerate() {
            let n: Vec<i64> = ng.coords(n_idx).into_iter().map(|v| v as i64).collect();
            let freq: Vec<i64> = n.iter().map(|v| v * b).collect();
            let dot: i64 = k.iter().zip(&freq).map(|(k, f)| a * k * f).sum();
            spread[grid.index_of(&freq)] += coef * grid.phase(-dot);
        }
        dft_nd(&mut spread, grid.n, grid.d, Direction::Backward);
        for (idx, slot) in acc.iter_mut().enumerate() {
            let t = grid.coords(idx);
            let s: Vec<i64> = t.iter().zip(&k).map(|(&t, k)| t as i64 - a * k).collect();
            *slot += spread[idx] * sys.window.get(&s);
        }
    }
    LatticeSignal::new(grid, acc)
}

/// `S f = Σ ⟨f, g_{k,n}⟩ g_{k,n}`.
pub fn frame_operator_apply(f: &LatticeSignal, sys: &GaborSystem) -> Result<LatticeSignal> {
    gabor_synthesis(&gabor_analysis(f, sys)?, sys)
}

/// Dense matrix of the frame operator in the standard basis.
pub fn frame_operator_matrix(sys: &GaborSystem) -> Result<DMatrix<Complex64>> {
    let grid = sys.grid();
    let l = grid.len();
    if l > DENSE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "dense frame operator limited to {DENSE_LIMIT} points, got {l}"
        )));
    }
    let mut m = DMatrix::zeros(l, l);
    for j in 0..l {
        let mut e = LatticeSignal::zeros(grid);
        e.values_mut()[j] = Complex64::new(1.0, 0.0);
        let col = frame_operator_apply(&e, sys)?;
        for (i, v) in col.values().iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    Ok(m)
}

/// Canonical dual window `γ = S^{-1} g`.
pub fn canonical_dual(sys: &GaborSystem) -> Result<LatticeSignal> {
    let s = frame_operator_matrix(sys)?;
    let rhs = DVector::from_column_slice(sys.window.values());
    let sol = s
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidArgument("frame operator is singular; the system is not a frame".into()))?;
    LatticeSignal::new(sys.grid(), sol.iter().copied().collect())
}

/// `(A, B) = (min_x, max_x) Σ_k |g(x - a·k)|²` over `k ∈ Z_{N/a}^d`.
pub fn walnut_frame_bounds(g: &LatticeSignal, a_step: usize) -> Result<(f64, f64)> {
    let grid = g.grid();
    if a_step == 0 || !grid.n.is_multiple_of(a_step) {
        return Err(Error::StepDoesNotDivide { step: a_step, n: grid.n });
    }
    let kg = Grid::unit(grid.d, grid.n / a_step)?;
    let a = a_step as i64;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for idx in 0..grid.len() {
        let x = grid.coords(idx);
        let s: f64 = (0..kg.len())
            .map(|k_idx| {
                let p: Vec<i64> = x
                    .iter()
                    .zip(kg.coords(k_idx))
                    .map(|(&x, k)| x as i64 - a * k as i64)
                    .collect();
                g.get(&p).norm_sqr()
            })
            .sum();
        lo = lo.min(s);
        hi = hi.max(s);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gaussian(grid: Grid, width: f64) -> LatticeSignal {
        LatticeSignal::from_fn(grid, |k| {
            let r2: f64 = k.iter().map(|&v| (v as f64 / width).powi(2)).sum();
            Complex64::new((-std::f64::consts::PI * r2).exp(), 0.0)
        })
    }

    #[test]
    fn analysis_matches_inner_products() {
        let grid = Grid::new(1, 8, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = LatticeSignal::random(grid, &mut rng);
        let g = LatticeSignal::random(grid, &mut rng);
        let sys = GaborSystem::new(g, 2, 4).unwrap();
        let c = gabor_analysis(&f, &sys).unwrap();
        for k in 0..4i64 {
            for n in 0..2i64 {
                let want = f.inner(&sys.atom(&[k], &[n])).unwrap();
                let got = c.row(k as usize)[n as usize];
                assert!((want - got).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn synthesis_is_adjoint_of_analysis() {
        let grid = Grid::new(1, 8, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = LatticeSignal::random(grid, &mut rng);
        let g = LatticeSignal::random(grid, &mut rng);
        let sys = GaborSystem::new(g, 2, 2).unwrap();
        let mut c = GaborCoefficients::zeros(&sys);
        for v in &mut c.values {
            *v = Complex64::new(rand::Rng::random_range(&mut rng, -1.0..1.0), 0.3);
        }
        // ⟨D c, f⟩ = Σ c · conj(C f)
        let lhs = gabor_synthesis(&c, &sys).unwrap().inner(&f).unwrap();
        let cf = gabor_analysis(&f, &sys).unwrap();
        let rhs: Complex64 = c.values.iter().zip(&cf.values).map(|(a, b)| a * b.conj()).sum();
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn delta_window_frame_operator_is_scalar() {
        let grid = Grid::new(1, 8, 0.5).unwrap();
        let sys = GaborSystem::new(LatticeSignal::delta(grid, &[0]), 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = LatticeSignal::random(grid, &mut rng);
        let c = gabor_analysis(&f, &sys).unwrap();
        for k in 0..8 {
            for z in c.row(k) {
                assert!((z - f.values()[k] * 0.5).norm() < 1e-14);
            }
        }
        let sf = frame_operator_apply(&f, &sys).unwrap();
        assert!(sf.max_abs_diff(&f.scale(Complex64::new(4.0, 0.0))).unwrap() < 1e-12);
    }

    #[test]
    fn zero_coefficients_synthesize_zero() {
        let grid = Grid::unit(1, 8).unwrap();
        let sys = GaborSystem::new(gaussian(grid, 2.0), 2, 2).unwrap();
        assert!(gabor_synthesis(&GaborCoefficients::zeros(&sys), &sys).unwrap().is_zero());
        assert!(GaborSystem::new(gaussian(grid, 2.0), 3, 2).is_err());
    }

    #[test]
    fn full_density_frame_is_tight_and_dual_reconstructs() {
        let grid = Grid::unit(1, 16).unwrap();
        let g = gaussian(grid, 3.0);
        let sys = GaborSystem::new(g.clone(), 1, 1).unwrap();
        let s = frame_operator_matrix(&sys).unwrap();
        let scale = grid.cell_volume() * grid.len() as f64 * g.l2_plain().powi(2);
        let id = DMatrix::<Complex64>::identity(16, 16) * Complex64::new(scale, 0.0);
        assert!((s - id).norm() / scale < 1e-10);

        let sparse = GaborSystem::new(g, 2, 4).unwrap();
        let gamma = canonical_dual(&sparse).unwrap();
        let dual_sys = GaborSystem::new(gamma, 2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = LatticeSignal::random(grid, &mut rng);
        let back = gabor_synthesis(&gabor_analysis(&f, &sparse).unwrap(), &dual_sys).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-8);
    }

    #[test]
    fn walnut_examples() {
        let grid = Grid::unit(1, 8).unwrap();
        let (a, b) = walnut_frame_bounds(&LatticeSignal::constant(grid, Complex64::new(1.0, 0.0)), 1).unwrap();
        assert_eq!((a, b), (8.0, 8.0));
        let (a, _) = walnut_frame_bounds(&LatticeSignal::delta(grid, &[0]), 8).unwrap();
        assert_eq!(a, 0.0);
        let grid = Grid::unit(1, 32).unwrap();
        let bump = LatticeSignal::from_fn(grid, |k| {
            let t = k[0] as f64 / 8.0;
            Complex64::new(if t.abs() < 1.0 { (-1.0 / (1.0 - t * t)).exp() } else { 0.0 }, 0.0)
        });
        let (a, b) = walnut_frame_bounds(&bump, 8).unwrap();
        assert!(a > 0.0 && b >= a);
    }
}
