//! Short-time Fourier transform, its identities, and a Gabor frame with its canonical dual.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfsharp::transforms::{
    canonical_dual, fundamental_identity_residual, gabor_analysis, gabor_synthesis, stft, walnut_frame_bounds,
    GaborSystem,
};
use tfsharp::{Grid, LatticeSignal};

fn main() -> tfsharp::Result<()> {
    let grid = Grid::balanced(1, 16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let f = LatticeSignal::random(grid, &mut rng);
    let g = LatticeSignal::gaussian(grid, 1.0);

    let v = stft(&f, &g)?;
    let energy: f64 = v.data().iter().map(|z| z.norm_sqr()).sum();
    println!("STFT of a random signal: {} coefficients, sum |V|^2 = {energy:.6}", v.data().len());
    println!("fundamental identity residual: {:.2e}", fundamental_identity_residual(&f, &g)?);

    let (a, b) = walnut_frame_bounds(&g, 2)?;
    println!("frame bounds for time step 2: A = {a:.4}, B = {b:.4}");

    let sys = GaborSystem::new(g.clone(), 2, 2)?;
    let dual = GaborSystem::new(canonical_dual(&sys)?, 2, 2)?;
    let c = gabor_analysis(&f, &dual)?;
    let back = gabor_synthesis(&c, &sys)?;
    let err = f.values().iter().zip(back.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("reconstruction through the canonical dual: max error {err:.2e}");
    Ok(())
}
