//! Draws RROC charts: points with the diagonal and an isometric, a single
//! curve, and several curves with their hull.
//!
//! Run with `cargo run --example render_svg [output-dir]`.

use std::path::PathBuf;

use rroc::analysis::{convex_hull, isometric_through, HullInput};
use rroc::curve::RrocCurve;
use rroc::metrics::OperatingCondition;
use rroc::sample_data;
use rroc::svg::{render_rroc, RrocChart, SvgStyle};

fn main() -> rroc::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let titled = |t: &str| SvgStyle {
        title: Some(t.to_string()),
        ..SvgStyle::default()
    };

    let ids = ["m1", "m2", "m3"];
    let points: Vec<_> = ids
        .iter()
        .map(|id| (*id, sample_data::errors(id).over_under()))
        .collect();
    let oc = OperatingCondition::new(0.8)?;
    let chart = RrocChart {
        points: points.clone(),
        isometrics: vec![isometric_through(points[2].1, oc)],
        ..Default::default()
    };
    write(
        &dir,
        "rroc-points.svg",
        render_rroc(&chart, &titled("three models, alpha = 0.8"))?,
    )?;

    let curves: Vec<RrocCurve> = ids
        .iter()
        .map(|id| RrocCurve::from_errors(*id, &sample_data::errors(id)))
        .collect();
    let one = RrocChart {
        curves: vec![&curves[0]],
        ..Default::default()
    };
    write(
        &dir,
        "rroc-curve-m1.svg",
        render_rroc(&one, &titled("m1 swept over all shifts"))?,
    )?;

    let inputs: Vec<HullInput> = curves.iter().map(HullInput::Curve).collect();
    let hull = convex_hull(&inputs)?;
    let all = RrocChart {
        curves: curves.iter().collect(),
        hull: Some(&hull),
        ..Default::default()
    };
    write(
        &dir,
        "rroc-hull.svg",
        render_rroc(&all, &titled("curves and their convex hull"))?,
    )?;
    Ok(())
}

fn write(dir: &std::path::Path, name: &str, svg: String) -> rroc::Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, svg)?;
    println!("wrote {}", path.display());
    Ok(())
}
