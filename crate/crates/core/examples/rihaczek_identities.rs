//! Multilinear Rihaczek distribution: its STFT closed form and the Kohn-Nirenberg pairing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfsharp::rihaczek::{
    boundedness_ratio, closed_form_residual, duality_residual, kohn_nirenberg_apply, rihaczek, Denominator,
    PhaseSpaceSignal, RatioSetup, Target,
};
use tfsharp::{ExponentTuple, ExtendedExponent, Grid, LatticeSignal};

fn main() -> tfsharp::Result<()> {
    let grid = Grid::balanced(1, 8)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = LatticeSignal::random(grid, &mut rng);
    let f1 = LatticeSignal::random(grid, &mut rng);
    let f2 = LatticeSignal::random(grid, &mut rng);

    let fs = [f1.clone(), f2];
    let r = rihaczek(&g, &fs)?;
    println!("R_2(g, f1, f2) lives on a {}-dimensional lattice with {} points", r.signal().d(), r.signal().len());

    let windows: Vec<_> = (0..3).map(|_| LatticeSignal::random(grid, &mut rng)).collect();
    let res = closed_form_residual(&g, &fs, &windows)?;
    println!("STFT closed form vs direct STFT: {res:.2e}");

    let sigma = PhaseSpaceSignal::new(1, LatticeSignal::random(grid.with_dim(2), &mut rng))?;
    let kf = kohn_nirenberg_apply(&sigma, std::slice::from_ref(&f1))?;
    println!("||K_sigma f||_2 = {:.4}", kf.lp_norm(2.0));
    println!("<K_sigma f, g> vs <sigma, R(g, f)>: {:.2e}", duality_residual(&sigma, &[f1], &g)?);

    // Boundedness ratio for inputs supported in one cell.
    let two: ExtendedExponent = "2".parse()?;
    let tuple = ExponentTuple::uniform(1, two);
    let setup = RatioSetup::gaussian(grid, 1, 1.0, Target::Modulation, Denominator::Lebesgue);
    let h = LatticeSignal::gaussian(grid, 0.5);
    println!("ratio ||R(h, h)||_M22 / ||h||_2^2 = {:.4}", boundedness_ratio(&h, std::slice::from_ref(&h), &tuple, &setup)?);
    Ok(())
}
