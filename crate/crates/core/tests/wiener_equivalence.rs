//! Smooth-partition amalgam norms against a sharp-cutoff oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tfsharp::norms::{wiener_amalgam_norm, PartitionOfUnity};
use tfsharp::{ExtendedExponent, Grid, LatticeSignal, SeparableWeight};

fn e(s: &str) -> ExtendedExponent {
    s.parse().unwrap()
}

fn lp(values: impl Iterator<Item = f64>, p: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, f64::max)
    } else {
        values.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `(Σ_k ‖f χ_{Q_k}‖_p^q)^{1/q}` with `Q_k = [k·step − step/2, k·step + step/2)` in one dimension.
fn sharp_amalgam(f: &LatticeSignal, step: usize, p: f64, q: f64) -> f64 {
    let grid = f.grid();
    let n = grid.n as i64;
    let half = step as i64 / 2;
    let cells = (0..grid.n / step).map(|k| {
        let start = k as i64 * step as i64 - half;
        let local = (start..start + step as i64).map(|t| f.get(&[t.rem_euclid(n)]).norm());
        let dx = if p.is_infinite() { 1.0 } else { grid.alpha.powf(1.0 / p) };
        lp(local, p) * dx
    });
    lp(cells, q)
}

#[test]
fn smooth_and_sharp_partitions_give_equivalent_norms() {
    let grid = Grid::balanced(1, 32).unwrap();
    let step = 8;
    let part = PartitionOfUnity::new(grid, step).unwrap();
    let mu = SeparableWeight::trivial(1);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut signals: Vec<LatticeSignal> = (0..30).map(|_| LatticeSignal::random(grid, &mut rng)).collect();
    signals.extend((-16..16).map(|t| LatticeSignal::delta(grid, &[t])));
    signals.extend((0..10).map(|_| LatticeSignal::random_supported(grid, 3, &mut rng)));

    for (p, q) in [("1", "1"), ("2", "2"), ("inf", "1"), ("1", "inf"), ("4", "4/3")] {
        let (pf, qf) = (e(p).p_f64(), e(q).p_f64());
        let ratios: Vec<f64> = signals
            .iter()
            .map(|f| wiener_amalgam_norm(f, &part, e(p), e(q), &mu).unwrap() / sharp_amalgam(f, step, pf, qf))
            .collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!(lo > 0.25 && hi < 4.0, "(p, q) = ({p}, {q}): ratios in [{lo}, {hi}]");
    }
}

#[test]
fn sharp_and_smooth_agree_on_cell_centred_signals() {
    // Away from cell edges the smooth partition is exactly one on a single cell.
    let grid = Grid::balanced(1, 32).unwrap();
    let part = PartitionOfUnity::new(grid, 8).unwrap();
    let f = LatticeSignal::from_fn(grid, |x| {
        let t = x[0].rem_euclid(8);
        let centred = t <= 1 || t >= 7;
        num_complex::Complex64::new(if centred { 1.0 + x[0] as f64 * 0.1 } else { 0.0 }, 0.0)
    });
    for (p, q) in [("1", "1"), ("2", "inf"), ("inf", "2")] {
        let smooth = wiener_amalgam_norm(&f, &part, e(p), e(q), &SeparableWeight::trivial(1)).unwrap();
        let sharp = sharp_amalgam(&f, 8, e(p).p_f64(), e(q).p_f64());
        assert!((smooth - sharp).abs() < 1e-12 * sharp, "({p}, {q}): {smooth} vs {sharp}");
    }
}
