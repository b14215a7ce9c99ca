//! Kernel density estimates of error vectors, for comparing error
//! distributions side by side with RROC curves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::ErrorVector;

/// Default number of evaluation points per density.
pub const DEFAULT_DENSITY_POINTS: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDensity {
    pub model_id: String,
    pub bandwidth: f64,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

/// Silverman's rule of thumb, `1.06 * sigma * n^(-1/5)`, with the population
/// standard deviation.
///
/// A zero-variance sample gets a bandwidth of `1e-3 * max(1, |mean|)` so the
/// estimate stays a finite spike instead of a delta.
pub fn silverman_bandwidth(errors: &ErrorVector) -> f64 {
    let sigma = errors.variance().sqrt();
    let n = errors.len() as f64;
    let h = 1.06 * sigma * n.powf(-0.2);
    if h > 0.0 && h.is_finite() {
        h
    } else {
        1e-3 * errors.mean().abs().max(1.0)
    }
}

/// Gaussian KDE evaluated at each grid point.
pub fn kde(errors: &ErrorVector, bandwidth: f64, grid: &[f64]) -> Result<Vec<f64>> {
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::Config(format!(
            "bandwidth must be positive, got {bandwidth}"
        )));
    }
    let norm = 1.0 / (errors.len() as f64 * bandwidth * (2.0 * std::f64::consts::PI).sqrt());
    Ok(grid
        .iter()
        .map(|&x| {
            errors
                .iter()
                .map(|e| {
                    let z = (x - e) / bandwidth;
                    (-0.5 * z * z).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect())
}

/// Evenly spaced grid covering `[lo - 3h, hi + 3h]`.
pub fn density_grid(lo: f64, hi: f64, bandwidth: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    let a = lo - 3.0 * bandwidth;
    let b = hi + 3.0 * bandwidth;
    let step = (b - a) / (points - 1) as f64;
    (0..points).map(|i| a + step * i as f64).collect()
}

/// Density of one model's errors on its own grid.
pub fn error_density(model_id: &str, errors: &ErrorVector, points: usize) -> ErrorDensity {
    let h = silverman_bandwidth(errors);
    let (lo, hi) = min_max(errors);
    let grid = density_grid(lo, hi, h, points);
    let density = kde(errors, h, &grid).expect("bandwidth is positive");
    ErrorDensity {
        model_id: model_id.to_string(),
        bandwidth: h,
        grid,
        density,
    }
}

/// Densities of several models on one shared grid, each with its own
/// bandwidth, so curves can be overlaid.
pub fn error_densities(
    models: &[(String, ErrorVector)],
    points: usize,
) -> Result<Vec<ErrorDensity>> {
    if models.is_empty() {
        return Err(Error::Empty("model set"));
    }
    let bandwidths: Vec<f64> = models.iter().map(|(_, e)| silverman_bandwidth(e)).collect();
    let (lo, hi) = models
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, e)| {
            let (a, b) = min_max(e);
            (lo.min(a), hi.max(b))
        });
    let widest = bandwidths.iter().copied().fold(0.0, f64::max);
    let grid = density_grid(lo, hi, widest, points);
    models
        .iter()
        .zip(bandwidths)
        .map(|((id, e), h)| {
            Ok(ErrorDensity {
                model_id: id.clone(),
                bandwidth: h,
                density: kde(e, h, &grid)?,
                grid: grid.clone(),
            })
        })
        .collect()
}

fn min_max(errors: &ErrorVector) -> (f64, f64) {
    errors
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
            (lo.min(e), hi.max(e))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample_data;

    #[test]
    fn integrates_to_about_one() {
        let d = error_density("m1", &sample_data::errors("m1"), 2000);
        let step = d.grid[1] - d.grid[0];
        let mass: f64 = d.density.iter().sum::<f64>() * step;
        assert!((mass - 1.0).abs() < 5e-3, "mass {mass}");
    }

    #[test]
    fn silverman_matches_formula() {
        let e = sample_data::errors("m2");
        let expected = 1.06 * e.variance().sqrt() * 10f64.powf(-0.2);
        assert!((silverman_bandwidth(&e) - expected).abs() < 1e-15);
    }

    #[test]
    fn zero_variance_still_has_a_bandwidth() {
        let e = ErrorVector::new(vec![2.0; 5]).unwrap();
        let h = silverman_bandwidth(&e);
        assert!(h > 0.0);
        let d = error_density("c", &e, 101);
        assert!(d.density.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn shared_grid_for_overlays() {
        let models: Vec<_> = ["m1", "m2", "m3"]
            .iter()
            .map(|id| (id.to_string(), sample_data::errors(id)))
            .collect();
        let ds = error_densities(&models, 64).unwrap();
        assert_eq!(ds.len(), 3);
        assert!(ds.windows(2).all(|w| w[0].grid == w[1].grid));
        assert!(error_densities(&[], 64).is_err());
    }
}
