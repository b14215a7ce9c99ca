//! Kernel density estimates of model errors next to their RROC curves:
//! more peaked error densities give curves closer to heaven.
//!
//! Run with `cargo run --example error_density [output-dir]`.

use std::path::PathBuf;

use rroc::curve::RrocCurve;
use rroc::density::error_densities;
use rroc::sample_data;
use rroc::svg::{render_densities, SvgStyle};

fn main() -> rroc::Result<()> {
    let models: Vec<_> = ["m1", "m2", "m3"]
        .iter()
        .map(|id| (id.to_string(), sample_data::errors(id)))
        .collect();
    let densities = error_densities(&models, 200)?;
    for (d, (id, e)) in densities.iter().zip(&models) {
        let (i, peak) =
            d.density.iter().enumerate().fold(
                (0, 0.0),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
        println!(
            "{id}: bandwidth {:.3}, peak density {:.3} at error {:+.3}, AOC {:.2}",
            d.bandwidth,
            peak,
            d.grid[i],
            RrocCurve::from_errors(id.as_str(), e).aoc()?
        );
    }

    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let path = dir.join("rroc-density.svg");
    let style = SvgStyle {
        title: Some("error densities".into()),
        ..SvgStyle::default()
    };
    std::fs::write(&path, render_densities(&densities, &style)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
