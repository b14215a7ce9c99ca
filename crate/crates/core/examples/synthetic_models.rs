//! Seeded synthetic data: a random model, actual values plus noise, and a
//! constant model predicting the mean, on normally distributed outputs.
//!
//! Run with `cargo run --example synthetic_models [seed]`.

use rroc::curve::RrocCurve;
use rroc::synth::{generate_synthetic, ModelKind, SynthSpec};

fn main() -> rroc::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let spec = SynthSpec {
        dist: "normal:0,0.01".parse()?,
        n: 1000,
        kinds: ModelKind::ALL.to_vec(),
        seed,
    };
    let data = generate_synthetic(&spec)?;
    println!(
        "n = {}, seed = {seed}, expected AOC of the last two kinds about 50",
        data.n()
    );
    println!("{:<18} {:>8} {:>9} {:>8}", "model", "MAE", "MSE", "AOC");
    for (id, e) in data.error_vectors() {
        let m = e.metrics();
        let aoc = RrocCurve::from_errors(&id, &e).aoc()?;
        println!("{id:<18} {:>8.4} {:>9.6} {:>8.2}", m.mae, m.mse, aoc);
    }
    println!("\nCSV preview:");
    for line in data.to_csv_string()?.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
