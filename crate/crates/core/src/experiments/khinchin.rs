use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ExtendedExponent;

/// Largest sequence length accepted by [`khinchin_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Empirical `E|Σ a_k ω_k|^p` against `(Σ|a_k|²)^{p/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KhinchinReport {
    pub p: ExtendedExponent,
    pub trials: usize,
    pub seed: u64,
    pub mean_p_norm: f64,
    pub l2_reference: f64,
    pub ratio: f64,
}

fn check_p(p: ExtendedExponent) -> Result<f64> {
    if p.is_infinite() {
        return Err(Error::ExponentDomain("Khinchin experiment needs p < ∞".into()));
    }
    Ok(p.p_f64())
}

fn l2_reference(a: &[Complex64], p: f64) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().powf(p / 2.0)
}

fn signed_sum(a: &[Complex64], mut sign: impl FnMut(usize) -> bool) -> Complex64 {
    a.iter()
        .enumerate()
        .map(|(k, z)| if sign(k) { *z } else { -*z })
        .sum()
}

/// Draws `trials` independent sign vectors from a ChaCha8 stream seeded with `seed`.
pub fn khinchin_empirical(a: &[Complex64], p: ExtendedExponent, trials: usize, seed: u64) -> Result<KhinchinReport> {
    let pf = check_p(p)?;
    if trials < 50 {
        return Err(Error::InvalidArgument(format!("need at least 50 trials, got {trials}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..trials {
        total += signed_sum(a, |_| rng.random::<bool>()).norm().powf(pf);
    }
    let mean = total / trials as f64;
    let reference = l2_reference(a, pf);
    Ok(KhinchinReport {
        p,
        trials,
        seed,
        mean_p_norm: mean,
        l2_reference: reference,
        ratio: mean / reference,
    })
}

/// Exact `E|Σ a_k ω_k|^p / (Σ|a_k|²)^{p/2}` by enumerating all `2^n` sign vectors.
pub fn khinchin_exhaustive(a: &[Complex64], p: ExtendedExponent) -> Result<f64> {
    let pf = check_p(p)?;
    if a.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "exhaustive enumeration limited to {EXHAUSTIVE_LIMIT} entries, got {}",
            a.len()
        )));
    }
    let count = 1u64 << a.len();
    let total: f64 = (0..count)
        .map(|mask| signed_sum(a, |k| mask >> k & 1 == 1).norm().powf(pf))
        .sum();
    Ok(total / count as f64 / l2_reference(a, pf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0); n]
    }

    #[test]
    fn single_coefficient_is_exact() {
        let a = [Complex64::new(0.6, -0.8)];
        let r = khinchin_empirical(&a, "3".parse().unwrap(), 50, 1).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exhaustive_matches_moment_formulas() {
        let two = "2".parse().unwrap();
        let four = "4".parse().unwrap();
        for n in 1..=10 {
            assert!((khinchin_exhaustive(&ones(n), two).unwrap() - 1.0).abs() < 1e-12);
            let nf = n as f64;
            let exact = (3.0 * nf * nf - 2.0 * nf) / (nf * nf);
            assert!((khinchin_exhaustive(&ones(n), four).unwrap() - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn fourth_moment_near_exact_value() {
        // E S⁴ = 3n² - 2n for n unit signs; E S⁸ = 105n⁴ + O(n³) gives a standard error near 0.7 at 200 trials.
        let r = khinchin_empirical(&ones(64), "4".parse().unwrap(), 200, 0).unwrap();
        let exact = 3.0 - 2.0 / 64.0;
        assert!((r.ratio - exact).abs() < 2.1, "{}", r.ratio);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(khinchin_empirical(&ones(4), ExtendedExponent::infinity(), 100, 0).is_err());
        assert!(khinchin_empirical(&ones(4), "2".parse().unwrap(), 10, 0).is_err());
        assert!(khinchin_exhaustive(&ones(30), "2".parse().unwrap()).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let p = "2".parse().unwrap();
        assert_eq!(
            khinchin_empirical(&ones(64), p, 200, 9).unwrap(),
            khinchin_empirical(&ones(64), p, 200, 9).unwrap()
        );
    }
}
