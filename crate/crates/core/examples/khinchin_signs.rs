//! Random-sign sums: seeded Monte Carlo against exhaustive enumeration.

use num_complex::Complex64;
use tfsharp::experiments::{khinchin_empirical, khinchin_exhaustive};
use tfsharp::ExtendedExponent;

fn main() -> tfsharp::Result<()> {
    let a = vec![Complex64::new(1.0, 0.0); 64];
    for p in ["1", "2", "4"] {
        let p: ExtendedExponent = p.parse()?;
        let emp = khinchin_empirical(&a, p, 200, 0)?;
        let exact = khinchin_exhaustive(&a[..10], p)?;
        println!(
            "p = {p}: 200 trials give E|sum|^p / (sum |a|^2)^(p/2) = {:.4}; exact for 10 entries {exact:.4}",
            emp.ratio
        );
    }
    let decaying: Vec<Complex64> = (1..=16).map(|k| Complex64::new(1.0 / k as f64, 0.0)).collect();
    println!("decaying coefficients, p = 4: {:.4}", khinchin_exhaustive(&decaying, "4".parse()?)?);
    Ok(())
}
