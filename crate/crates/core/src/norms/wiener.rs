use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{ExtendedExponent, Grid, LatticeSignal, SeparableWeight};

use super::mixed::lp_reduce;

/// Smooth step: 0 for `u ≤ 0`, 1 for `u ≥ 1`, `C^∞` in between.
pub(crate) fn smooth_step(u: f64) -> f64 {
    let psi = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        psi(u) / (psi(u) + psi(1.0 - u))
    }
}

/// Tensor-product partition `σ_k = ρ_k / Σ_l ρ_l` with translates on `step·Z^d`.
///
/// `ρ` equals one on `|t_i| ≤ step/2` and vanishes for `|t_i| ≥ 3·step/4`,
/// so `σ_0` is supported in a box of side `3·step/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOfUnity {
    grid: Grid,
    step: usize,
    /// `axis[k]` lists `(t, σ^{1D}_k(t))` with nonzero value.
    axis: Vec<Vec<(usize, f64)>>,
}

impl PartitionOfUnity {
    pub fn new(grid: Grid, step: usize) -> Result<Self> {
        if step == 0 || !grid.n.is_multiple_of(step) {
            return Err(Error::StepDoesNotDivide { step, n: grid.n });
        }
        let n = grid.n as i64;
        let cells = grid.n / step;
        let rho = |t: i64, k: usize| {
            let c = (k * step) as i64;
            let dist = (t - c).rem_euclid(n).min((c - t).rem_euclid(n)) as f64;
            smooth_step(3.0 - 4.0 * dist / step as f64)
        };
        let mut axis = vec![Vec::new(); cells];
        for t in 0..grid.n {
            let total: f64 = (0..cells).map(|k| rho(t as i64, k)).sum();
            if total <= 0.0 {
                return Err(Error::InvalidPartition(format!("no bump covers index {t}")));
            }
            for (k, list) in axis.iter_mut().enumerate() {
                let v = rho(t as i64, k);
                if v > 0.0 {
                    list.push((t, v / total));
                }
            }
        }
        Ok(Self { grid, step, axis })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Cells per axis, `N/step`.
    pub fn cells(&self) -> usize {
        self.axis.len()
    }

    /// `σ_k` as a signal; `k` is a cell index.
    pub fn sigma(&self, k: &[i64]) -> LatticeSignal {
        let mut out = LatticeSignal::zeros(self.grid);
        self.for_each_in_cell(k, |idx, s| out.values_mut()[idx] = Complex64::new(s, 0.0));
        out
    }

    /// Visits `(flat index, σ_k value)` over the support of `σ_k`.
    fn for_each_in_cell(&self, k: &[i64], mut f: impl FnMut(usize, f64)) {
        let d = self.grid.d;
        let cells = self.cells() as i64;
        let lists: Vec<&Vec<(usize, f64)>> = k.iter().map(|&c| &self.axis[c.rem_euclid(cells) as usize]).collect();
        let mut pos = vec![0usize; d];
        if lists.iter().any(|l| l.is_empty()) {
            return;
        }
        loop {
            let mut idx = 0usize;
            let mut val = 1.0;
            for axis in 0..d {
                let (t, v) = lists[axis][pos[axis]];
                idx = idx * self.grid.n + t;
                val *= v;
            }
            f(idx, val);
            let mut axis = d;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                pos[axis] += 1;
                if pos[axis] < lists[axis].len() {
                    break;
                }
                pos[axis] = 0;
            }
        }
    }

    /// All cell indices in `[0, N/step)^d`, row-major.
    pub fn cell_indices(&self) -> Vec<Vec<i64>> {
        let cg = Grid::unit(self.grid.d, self.cells()).expect("positive");
        (0..cg.len())
            .map(|i| cg.coords(i).into_iter().map(|c| c as i64).collect())
            .collect()
    }

    /// Centered representative of a cell index, where `μ` is evaluated.
    pub fn cell_center(&self, k: &[i64]) -> Vec<i64> {
        let cg = Grid::unit(self.grid.d, self.cells()).expect("positive");
        k.iter().map(|&c| cg.center(cg.wrap(c))).collect()
    }

    /// `‖σ_k f‖_p` with the Riemann factor `alpha^{d/p}`.
    pub fn local_norm(&self, f: &LatticeSignal, k: &[i64], p: ExtendedExponent) -> f64 {
        let mut vals = Vec::new();
        self.for_each_in_cell(k, |idx, s| vals.push(f.values()[idx].norm() * s));
        lp_reduce(vals, p.p_f64()) * self.grid.cell_volume().powf(p.recip_f64())
    }
}

/// `‖f‖_{W(L^p, L^q_μ)} = ( Σ_k ‖σ_k f‖_p^q μ(k)^q )^{1/q}`, `sup` for `q = ∞`.
///
/// `μ` is evaluated at the centered cell index `k`.
pub fn wiener_amalgam_norm(
    f: &LatticeSignal,
    part: &PartitionOfUnity,
    p: ExtendedExponent,
    q: ExtendedExponent,
    mu: &SeparableWeight,
) -> Result<f64> {
    f.grid().ensure_same(&part.grid())?;
    if mu.dim() != f.d() {
        return Err(Error::DimensionMismatch {
            expected: f.d(),
            got: mu.dim(),
        });
    }
    let locals = part.cell_indices().into_iter().map(|k| {
        let weight = if mu.is_trivial() {
            1.0
        } else {
            let c: Vec<f64> = part.cell_center(&k).into_iter().map(|v| v as f64).collect();
            mu.eval_unchecked(&c)
        };
        part.local_norm(f, &k, p) * weight
    });
    Ok(lp_reduce(locals, q.p_f64()))
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
    fn partition_sums_to_one() {
        for (d, n, step) in [(1, 32, 4), (1, 16, 16), (2, 16, 4), (1, 24, 8), (1, 8, 2)] {
            let grid = Grid::unit(d, n).unwrap();
            let part = PartitionOfUnity::new(grid, step).unwrap();
            let mut total = LatticeSignal::zeros(grid);
            for k in part.cell_indices() {
                let s = part.sigma(&k);
                assert!(s.values().iter().all(|v| v.re >= 0.0));
                total = total.add(&s).unwrap();
            }
            let one = LatticeSignal::constant(grid, Complex64::new(1.0, 0.0));
            assert!(total.max_abs_diff(&one).unwrap() < 1e-12, "{d} {n} {step}");
        }
    }

    #[test]
    fn bump_support_and_plateau() {
        let grid = Grid::unit(1, 64).unwrap();
        let part = PartitionOfUnity::new(grid, 8).unwrap();
        let s0 = part.sigma(&[0]);
        for t in -32i64..32 {
            let v = s0.get(&[t]).re;
            if t.abs() >= 6 {
                assert_eq!(v, 0.0, "t={t}");
            }
            if t.abs() <= 2 {
                assert!((v - 1.0).abs() < 1e-15, "t={t}");
            }
        }
        assert!(PartitionOfUnity::new(grid, 7).is_err());
    }

    #[test]
    fn zero_signal_and_weight_dims() {
        let grid = Grid::unit(1, 16).unwrap();
        let part = PartitionOfUnity::new(grid, 4).unwrap();
        let w = SeparableWeight::trivial(1);
        assert_eq!(wiener_amalgam_norm(&LatticeSignal::zeros(grid), &part, e("1"), e("2"), &w).unwrap(), 0.0);
        assert!(wiener_amalgam_norm(&LatticeSignal::zeros(grid), &part, e("1"), e("2"), &SeparableWeight::trivial(2)).is_err());
    }

    #[test]
    fn single_cell_partition_is_lebesgue() {
        let grid = Grid::new(1, 16, 0.25).unwrap();
        let part = PartitionOfUnity::new(grid, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = LatticeSignal::random(grid, &mut rng);
        let w = SeparableWeight::trivial(1);
        for p in ["1", "2", "inf"] {
            let got = wiener_amalgam_norm(&f, &part, e(p), e("3"), &w).unwrap();
            assert!((got - f.lp_norm(e(p).p_f64())).abs() < 1e-12);
        }
    }
}
