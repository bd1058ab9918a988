//! Dilated bumps push the boundedness ratio to infinity outside the region, and not inside it.

use tfsharp::experiments::{bump_scaling_series, predicted_bump_exponent, star_growth_series};
use tfsharp::regions::brwm_verdict;
use tfsharp::rihaczek::Target;
use tfsharp::{ExponentTuple, ExtendedExponent, Grid};

fn e(s: &str) -> ExtendedExponent {
    s.parse().unwrap()
}

fn main() -> tfsharp::Result<()> {
    let grid = Grid::balanced(1, 1024)?;
    let lambdas = [1.0, 0.5, 0.25, 0.125, 0.0625];
    let tuples = [
        ("M^(1,1), L^2 x L^2", ExponentTuple::new(1, e("1"), e("1"), vec![e("2"); 2], vec![e("2"); 2])?),
        ("M^(2,2), L^2 x L^2", ExponentTuple::uniform(1, e("2"))),
    ];
    for (name, tuple) in &tuples {
        let report = bump_scaling_series(grid, tuple, Target::Modulation, &lambdas)?;
        println!(
            "{name}: verdict bounded = {}, slope {:.3} (predicted {:.3}, r^2 {:.4})",
            brwm_verdict(tuple)?.bounded,
            report.slope,
            predicted_bump_exponent(tuple, 1),
            report.r2
        );
        print!("{}", report.to_csv());
    }

    let star = star_growth_series(e("2"), &[e("2"), e("2")], 1, &[8, 16, 32, 64])?;
    println!("star growth at q = 2: slope {:.3} (predicted {:.3})", star.slope, star.predicted);
    Ok(())
}
