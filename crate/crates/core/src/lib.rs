//! Cost-sensitive evaluation of regression models in RROC space.
//!
//! A regression model's errors `e_i = predicted_i - actual_i` split into
//! total over-estimation (`OVER`, the sum of positive errors) and total
//! under-estimation (`UNDER`, the sum of negative errors). Plotting
//! `(OVER, UNDER)` for a set of models, and for every constant shift of each
//! model, gives a geometry in which the asymmetric absolute loss
//! `-2 alpha UNDER + 2 (1 - alpha) OVER` has straight isometrics, hulls pick
//! out the models worth keeping, and the area over a shift-swept curve is
//! `variance * n^2 / 2`.
//!
//! ```
//! use rroc::curve::rroc_curve;
//! use rroc::metrics::{total_loss, ErrorVector, OperatingCondition};
//!
//! let e = ErrorVector::from_predictions(&[1.0, 2.5, 2.0], &[1.5, 2.0, 2.0]).unwrap();
//! let p = e.over_under();
//! assert_eq!((p.over, p.under), (0.5, -0.5));
//!
//! let oc = OperatingCondition::new(0.8).unwrap();
//! assert!((total_loss(p, oc) - 1.0).abs() < 1e-12);
//!
//! let aoc = rroc_curve(&e).aoc().unwrap();
//! assert!((aoc - e.variance() * 9.0 / 2.0).abs() < 1e-12);
//! ```
//!
//! Modules, roughly in pipeline order:
//!
//! * [`dataset`] reads and writes the CSV layout.
//! * [`metrics`] holds error vectors, RROC points, the loss and summary metrics.
//! * [`curve`] builds shift-swept curves and their areas.
//! * [`analysis`] covers isometrics, hybrids, hulls and dominance regions.
//! * [`shift`] chooses shifts per operating condition and builds cost curves.
//! * [`density`] estimates error densities.
//! * [`synth`] generates seeded synthetic datasets.
//! * [`report`] runs everything and produces the JSON report.
//! * [`svg`] draws charts.
//!
//! The `examples/` directory has one runnable program per capability; start
//! with `cargo run --example rroc_space`.

pub mod analysis;
pub mod curve;
pub mod dataset;
pub mod density;
pub mod error;
pub mod metrics;
pub mod report;
pub mod sample_data;
mod serde_ext;
pub mod shift;
pub mod svg;
pub mod synth;

pub use error::{Error, Result};
