//! Seeded synthetic datasets: actual values drawn from a distribution and a
//! few reference models built from them.
//!
//! Each random quantity comes from its own ChaCha stream derived from the
//! seed, so the actual values for a given seed do not depend on which model
//! kinds are requested.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, ModelPredictions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distribution {
    Normal { mean: f64, sd: f64 },
}

impl Distribution {
    fn sampler(&self) -> Result<Normal<f64>> {
        match *self {
            Distribution::Normal { mean, sd } => Normal::new(mean, sd)
                .map_err(|e| Error::Config(format!("normal({mean}, {sd}): {e}"))),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Normal { mean, sd } => write!(f, "normal:{mean},{sd}"),
        }
    }
}

/// Parses `normal:<mean>,<sd>`.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Config(format!(
                "unsupported distribution `{s}` (expected normal:<mean>,<sd>)"
            ))
        };
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        if name.trim() != "normal" {
            return Err(bad());
        }
        let nums: Vec<f64> = params
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match nums[..] {
            [mean, sd] if mean.is_finite() && sd.is_finite() && sd >= 0.0 => {
                Ok(Distribution::Normal { mean, sd })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Predictions drawn independently from the same distribution as the
    /// actual values.
    Random,
    /// Actual values plus noise drawn from the same distribution.
    ActualPlusNoise,
    /// Always predicts the mean of the actual values.
    ConstantMean,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::Random,
        ModelKind::ActualPlusNoise,
        ModelKind::ConstantMean,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Random => "random",
            ModelKind::ActualPlusNoise => "actual-plus-noise",
            ModelKind::ConstantMean => "constant-mean",
        }
    }

    fn stream(&self) -> u64 {
        match self {
            ModelKind::Random => 1,
            ModelKind::ActualPlusNoise => 2,
            ModelKind::ConstantMean => 3,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown model kind `{s}` (expected random, actual-plus-noise or constant-mean)"
                ))
            })
    }
}

/// Parses a comma-separated kind list; `all` selects every kind.
pub fn parse_model_kinds(s: &str) -> Result<Vec<ModelKind>> {
    if s.trim() == "all" {
        return Ok(ModelKind::ALL.to_vec());
    }
    let mut kinds: Vec<ModelKind> = s.split(',').map(str::parse).collect::<Result<_>>()?;
    kinds.sort();
    kinds.dedup();
    Ok(kinds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub dist: Distribution,
    pub n: usize,
    pub kinds: Vec<ModelKind>,
    pub seed: u64,
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Builds the dataset. Model columns are named after their kinds.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<Dataset> {
    if spec.n == 0 {
        return Err(Error::Config("synthetic dataset needs n >= 1".into()));
    }
    if spec.kinds.is_empty() {
        return Err(Error::Config("no model kinds requested".into()));
    }
    let sampler = spec.dist.sampler()?;
    let mut r = rng(spec.seed, 0);
    let actual: Vec<f64> = (0..spec.n).map(|_| sampler.sample(&mut r)).collect();
    let mean = actual.iter().sum::<f64>() / spec.n as f64;

    let models = spec
        .kinds
        .iter()
        .map(|kind| {
            let mut r = rng(spec.seed, kind.stream());
            let predicted = match kind {
                ModelKind::Random => (0..spec.n).map(|_| sampler.sample(&mut r)).collect(),
                ModelKind::ActualPlusNoise => {
                    actual.iter().map(|y| y + sampler.sample(&mut r)).collect()
                }
                ModelKind::ConstantMean => vec![mean; spec.n],
            };
            ModelPredictions {
                id: kind.name().to_string(),
                predicted,
            }
        })
        .collect();
    Dataset::new(actual, models)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::rroc_curve;

    fn spec(kinds: Vec<ModelKind>, seed: u64) -> SynthSpec {
        SynthSpec {
            dist: "normal:0,0.01".parse().unwrap(),
            n: 1000,
            kinds,
            seed,
        }
    }

    #[test]
    fn parses_specs() {
        assert_eq!(
            "normal:0,0.01".parse::<Distribution>().unwrap(),
            Distribution::Normal {
                mean: 0.0,
                sd: 0.01
            }
        );
        for bad in [
            "uniform:0,1",
            "normal:0",
            "normal:a,b",
            "normal:0,-1",
            "normal",
        ] {
            assert!(bad.parse::<Distribution>().is_err(), "{bad}");
        }
        assert_eq!(parse_model_kinds("all").unwrap().len(), 3);
        assert_eq!(
            parse_model_kinds("constant-mean,random").unwrap(),
            vec![ModelKind::Random, ModelKind::ConstantMean]
        );
        assert!(parse_model_kinds("oracle").is_err());
    }

    #[test]
    fn deterministic_and_selection_independent() {
        let a = generate_synthetic(&spec(ModelKind::ALL.to_vec(), 7)).unwrap();
        let b = generate_synthetic(&spec(ModelKind::ALL.to_vec(), 7)).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&spec(vec![ModelKind::ConstantMean], 7)).unwrap();
        assert_eq!(a.actual(), c.actual());
        assert_eq!(a.model("constant-mean"), c.model("constant-mean"));
        let d = generate_synthetic(&spec(vec![ModelKind::ConstantMean], 8)).unwrap();
        assert_ne!(a.actual(), d.actual());
    }

    #[test]
    fn constant_mean_aoc_is_near_fifty() {
        let ds = generate_synthetic(&spec(vec![ModelKind::ConstantMean], 1)).unwrap();
        let e = ds.errors("constant-mean").unwrap();
        let aoc = rroc_curve(&e).aoc().unwrap();
        assert!((aoc - e.variance() * 1e6 / 2.0).abs() < 1e-9 * aoc);
        assert!((40.0..60.0).contains(&aoc), "{aoc}");
    }

    #[test]
    fn single_example_and_zero_n() {
        let mut s = spec(ModelKind::ALL.to_vec(), 3);
        s.n = 1;
        let ds = generate_synthetic(&s).unwrap();
        for (_, e) in ds.error_vectors() {
            assert_eq!(
                rroc_curve(&e).interior()[0].point,
                crate::metrics::RrocPoint::HEAVEN
            );
        }
        s.n = 0;
        assert!(generate_synthetic(&s).is_err());
    }
}
