//! Sequence convolutions on Z^d: plain, star, and the tau embedding ratio.

use num_complex::Complex64;
use tfsharp::discrete::{convolve, star_convolve, star_ratio, tau_embedding_ratio, TruncatedSequence};
use tfsharp::ExtendedExponent;

fn e(s: &str) -> ExtendedExponent {
    s.parse().unwrap()
}

fn main() -> tfsharp::Result<()> {
    let a = TruncatedSequence::ones_box(1, 2);
    let b = TruncatedSequence::from_points(1, [(vec![0], Complex64::new(1.0, 0.0)), (vec![3], Complex64::new(0.0, -2.0))])?;
    let c = convolve(&a, &b)?;
    println!("a * b has {} nonzero entries, l^1 norm {:.1}", c.len(), c.lp_norm(e("1")));

    let s = star_convolve(&a, &[a.clone(), a.clone()])?;
    println!("star convolution of three boxes: {} entries, l^2 norm {:.4}", s.len(), s.lp_norm(e("2")));

    for n in [4, 8, 16, 32] {
        let ones = TruncatedSequence::ones_box(1, n);
        let star = star_ratio(&ones, std::slice::from_ref(&ones), e("2"), &[e("2"), e("2")])?;
        let tau = tau_embedding_ratio(&ones, std::slice::from_ref(&ones), e("2"), e("2"), &[e("2"), e("2")])?;
        println!("box radius {n:>2}: star ratio {star:.4}, tau ratio {tau:.4}");
    }
    Ok(())
}
