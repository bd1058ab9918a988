use num_complex::Complex64;

use super::fft::{dft_nd, unit_root, Direction};
use crate::lattice::LatticeSignal;

/// Riemann-weighted DFT.
///
/// Forward: `F(n) = alpha^d Σ_k f(k) e^{-2πi k·n/N}`.
/// Inverse: `f(k) = (alpha^d N^d)^{-1} Σ_n F(n) e^{2πi k·n/N}`.
pub fn dft(f: &LatticeSignal, inverse: bool) -> LatticeSignal {
    let grid = f.grid();
    let mut data = f.values().to_vec();
    let dir = if inverse { Direction::Backward } else { Direction::Forward };
    dft_nd(&mut data, grid.n, grid.d, dir);
    let scale = if inverse {
        1.0 / (grid.cell_volume() * grid.len() as f64)
    } else {
        grid.cell_volume()
    };
    for v in &mut data {
        *v *= scale;
    }
    LatticeSignal::new(grid, data).expect("transform preserves shape")
}

/// Reference transform by direct summation over all `N^d` indices per output.
pub fn dft_naive(f: &LatticeSignal, inverse: bool) -> LatticeSignal {
    let grid = f.grid();
    let n = grid.n;
    let dir = if inverse { Direction::Backward } else { Direction::Forward };
    let table: Vec<Complex64> = (0..n).map(|j| unit_root(n, j, dir)).collect();
    let out: Vec<Complex64> = (0..grid.len())
        .map(|out_idx| {
            let nn = grid.coords(out_idx);
            f.values()
                .iter()
                .enumerate()
                .map(|(idx, &v)| {
                    let dot: usize = grid.coords(idx).iter().zip(&nn).map(|(a, b)| a * b).sum();
                    v * table[dot % n]
                })
                .sum()
        })
        .collect();
    let scale = if inverse {
        1.0 / (grid.cell_volume() * grid.len() as f64)
    } else {
        grid.cell_volume()
    };
    LatticeSignal::new(grid, out.into_iter().map(|v| v * scale).collect()).expect("shape preserved")
}

/// `(T_x f)(t) = f(t - x)`, periodically.
pub fn translate(f: &LatticeSignal, x: &[i64]) -> LatticeSignal {
    LatticeSignal::from_fn(f.grid(), |t| {
        let s: Vec<i64> = t.iter().zip(x).map(|(a, b)| a - b).collect();
        f.get(&s)
    })
}

/// `(M_ξ f)(t) = e^{2πi t·ξ/N} f(t)`.
pub fn modulate(f: &LatticeSignal, xi: &[i64]) -> LatticeSignal {
    let grid = f.grid();
    LatticeSignal::from_fn(grid, |t| {
        let dot: i64 = t.iter().zip(xi).map(|(a, b)| a * b).sum();
        grid.phase(dot) * f.get(t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_and_constant() {
        let g = Grid::unit(1, 4).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let f = dft(&LatticeSignal::delta(g, &[0]), false);
        assert!(f.max_abs_diff(&LatticeSignal::constant(g, one)).unwrap() < 1e-15);
        let f = dft(&LatticeSignal::constant(g, one), false);
        let want = LatticeSignal::delta(g, &[0]).scale(Complex64::new(4.0, 0.0));
        assert!(f.max_abs_diff(&want).unwrap() < 1e-12);
    }

    #[test]
    fn fast_matches_naive_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, n, alpha) in [(1, 16, 0.3), (2, 8, 1.0), (1, 12, 0.5), (2, 6, 0.7)] {
            let g = Grid::new(d, n, alpha).unwrap();
            let f = LatticeSignal::random(g, &mut rng);
            for inv in [false, true] {
                let err = dft(&f, inv).max_abs_diff(&dft_naive(&f, inv)).unwrap();
                assert!(err < 1e-12, "{d} {n} {inv}: {err}");
            }
            let back = dft(&dft(&f, false), true);
            assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        }
    }

    #[test]
    fn translate_and_modulate_basics() {
        let g = Grid::unit(1, 8).unwrap();
        let d0 = LatticeSignal::delta(g, &[0]);
        assert_eq!(translate(&d0, &[3]), LatticeSignal::delta(g, &[3]));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = LatticeSignal::random(g, &mut rng);
        assert!(modulate(&f, &[0]).max_abs_diff(&f).unwrap() < 1e-15);
        assert!(translate(&f, &[8]).max_abs_diff(&f).unwrap() == 0.0);
    }
}
