//! Modulation, Fourier-modulation and Wiener amalgam quasi-norms of a few signals.

use tfsharp::experiments::dilated_bump;
use tfsharp::norms::{fourier_modulation_norm, modulation_norm, wiener_amalgam_norm, PartitionOfUnity};
use tfsharp::{ExtendedExponent, Grid, LatticeSignal, SeparableWeight};

fn e(s: &str) -> ExtendedExponent {
    s.parse().unwrap()
}

fn main() -> tfsharp::Result<()> {
    let grid = Grid::balanced(1, 32)?;
    let window = LatticeSignal::gaussian(grid, 1.0);
    let trivial = SeparableWeight::trivial(2);
    let signals = [
        ("delta", LatticeSignal::delta(grid, &[0])),
        ("gaussian", LatticeSignal::gaussian(grid, 0.5)),
        ("bump 1/2", dilated_bump(0.5, grid)?),
    ];
    let pairs = [("1", "1"), ("2", "2"), ("inf", "1"), ("1/2", "1/2")];
    for (name, f) in &signals {
        let values: Vec<String> = pairs
            .iter()
            .map(|&(p, q)| modulation_norm(f, &window, e(p), e(q), &trivial).map(|v| format!("M^({p},{q}) {v:.4}")))
            .collect::<Result<_, _>>()?;
        println!("{name:>9}: {}", values.join(", "));
    }

    // Moyal: the M^{2,2} norm is ||g||_2 ||f||_2.
    let f = &signals[1].1;
    let m22 = modulation_norm(f, &window, e("2"), e("2"), &trivial)?;
    println!("Moyal check: {m22:.6} vs {:.6}", window.lp_norm(2.0) * f.lp_norm(2.0));

    let weighted = modulation_norm(f, &window, e("2"), e("2"), &SeparableWeight::polynomial(2, 1.0))?;
    let fm = fourier_modulation_norm(f, &window, e("1"), e("inf"), &trivial)?;
    println!("weighted M^(2,2)_<z>: {weighted:.4}, FM^(1,inf): {fm:.4}");

    let part = PartitionOfUnity::new(grid, 8)?;
    let w = wiener_amalgam_norm(f, &part, e("inf"), e("1"), &SeparableWeight::trivial(1))?;
    println!("W(L^inf, L^1) over {} cells: {w:.4}", part.cells());
    Ok(())
}
