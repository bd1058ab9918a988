//! Signal, phase-space and STFT files as read and written by the command-line tool.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfsharp::io::{read_json, read_signal, stft_from_file, stft_to_csv, stft_to_file, write_json};
use tfsharp::rihaczek::{rihaczek, PhaseSpaceSignal};
use tfsharp::transforms::stft;
use tfsharp::{Grid, LatticeSignal, SeparableWeight};

fn main() -> tfsharp::Result<()> {
    let dir = std::env::temp_dir().join("tfsharp-file-formats");
    std::fs::create_dir_all(&dir).map_err(|source| tfsharp::Error::Io { context: "creating temp dir".into(), source })?;

    let grid = Grid::balanced(1, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = LatticeSignal::random(grid, &mut rng);
    let path = dir.join("f.json");
    write_json(&path, &f)?;
    let back: LatticeSignal = read_json(&path)?;
    println!("signal round trip exact: {}", back.values() == f.values());

    let r = rihaczek(&f, std::slice::from_ref(&f))?;
    let rpath = dir.join("r.json");
    write_json(&rpath, &r)?;
    let rb: PhaseSpaceSignal = read_json(&rpath)?;
    println!("phase-space round trip: m = {}, as a plain signal d = {}", rb.m(), read_signal(&rpath)?.d());

    let v = stft(&f, &LatticeSignal::gaussian(grid, 1.0))?;
    let csv = stft_to_csv(&v);
    println!("STFT CSV header and first row:\n{}", csv.lines().take(2).collect::<Vec<_>>().join("\n"));
    let restored = stft_from_file(&stft_to_file(&v))?;
    println!("STFT JSON round trip max diff: {:.1e}", restored.max_abs_diff(&v));

    let w = SeparableWeight::uniform_blocks(1, &[1.0, 0.5]);
    println!("weight file: {}", serde_json::to_string(&w).unwrap());
    Ok(())
}
