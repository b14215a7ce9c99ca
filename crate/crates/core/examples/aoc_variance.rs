//! The area over an RROC curve equals `variance * n^2 / 2`, checked three
//! ways: trapezoids over the vertices, the variance formula, and a brute
//! force shift sweep.
//!
//! Run with `cargo run --example aoc_variance`.

use rroc::curve::{aoc_brute_force, default_shift_grid, RrocCurve};
use rroc::metrics::ErrorVector;
use rroc::sample_data;

fn main() -> rroc::Result<()> {
    println!(
        "{:<4} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "id", "variance", "AOC", "var*n^2/2", "sweep", "norm AOC"
    );
    for id in ["m1", "m2", "m3", "m4"] {
        let e = sample_data::errors(id);
        let curve = RrocCurve::from_errors(id, &e);
        let n = e.len() as f64;
        let aoc = curve.aoc()?;
        let sweep = aoc_brute_force(&e, &default_shift_grid(&e))?;
        println!(
            "{id:<4} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.6}",
            e.variance(),
            aoc,
            e.variance() * n * n / 2.0,
            sweep,
            curve.normalized().aoc()?
        );
    }

    let e = sample_data::errors("m1");
    let moved = e.shifted(2.5)?;
    println!(
        "\nbias does not matter: AOC(m1) = {:.4}, AOC(m1 + 2.5) = {:.4}",
        RrocCurve::from_errors("", &e).aoc()?,
        RrocCurve::from_errors("", &moved).aoc()?
    );

    let constant = ErrorVector::new(vec![0.7; 10])?;
    println!(
        "a constant error has AOC {}",
        RrocCurve::from_errors("", &constant).aoc()?
    );
    Ok(())
}
