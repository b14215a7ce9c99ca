//! Error vectors, scalar metrics, the asymmetric absolute loss and points in
//! RROC space.
//!
//! RROC space puts total over-estimation (`OVER`, non-negative) on the x-axis
//! and total under-estimation (`UNDER`, non-positive) on the y-axis. The point
//! `(0, 0)` is "heaven": a model that never errs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signed per-example errors `predicted - actual` of one model on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorVector(Vec<f64>);

impl ErrorVector {
    /// Builds `e_i = predicted_i - actual_i`, preserving order.
    pub fn from_predictions(predicted: &[f64], actual: &[f64]) -> Result<Self> {
        if predicted.len() != actual.len() {
            return Err(Error::LengthMismatch {
                left: predicted.len(),
                right: actual.len(),
            });
        }
        check_finite(predicted)?;
        check_finite(actual)?;
        Self::new(predicted.iter().zip(actual).map(|(p, a)| p - a).collect())
    }

    /// Wraps already computed errors.
    pub fn new(errors: Vec<f64>) -> Result<Self> {
        if errors.is_empty() {
            return Err(Error::Empty("error vector"));
        }
        check_finite(&errors)?;
        Ok(Self(errors))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    /// Errors of the model with `shift` added to every prediction.
    pub fn shifted(&self, shift: f64) -> Result<Self> {
        if !shift.is_finite() {
            return Err(Error::NonFinite {
                index: 0,
                value: shift,
            });
        }
        Self::new(self.0.iter().map(|e| e + shift).collect())
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.len() as f64
    }

    /// Population variance (divides by `n`, not `n - 1`).
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.0.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / self.len() as f64
    }

    /// Total over- and under-estimation. Exact zeros count towards neither.
    pub fn over_under(&self) -> RrocPoint {
        let mut over = 0.0;
        let mut under = 0.0;
        for &e in &self.0 {
            if e > 0.0 {
                over += e;
            } else if e < 0.0 {
                under += e;
            }
        }
        RrocPoint { over, under }
    }

    pub fn metrics(&self) -> SummaryMetrics {
        let n = self.len() as f64;
        let point = self.over_under();
        let mae = self.0.iter().map(|e| e.abs()).sum::<f64>() / n;
        let mse = self.0.iter().map(|e| e * e).sum::<f64>() / n;
        SummaryMetrics {
            mae,
            mse,
            bias: self.mean(),
            variance: self.variance(),
            mmse: point.mmse(),
        }
    }
}

impl AsRef<[f64]> for ErrorVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// Free-function form of [`ErrorVector::from_predictions`].
pub fn error_vector(predicted: &[f64], actual: &[f64]) -> Result<ErrorVector> {
    ErrorVector::from_predictions(predicted, actual)
}

/// Free-function form of [`ErrorVector::over_under`].
pub fn over_under(errors: &ErrorVector) -> RrocPoint {
    errors.over_under()
}

/// Free-function form of [`ErrorVector::metrics`].
pub fn metrics(errors: &ErrorVector) -> SummaryMetrics {
    errors.metrics()
}

/// A position `(OVER, UNDER)` in RROC space.
///
/// Coordinates may be infinite only for the two extreme models, `(0, -inf)`
/// (always predicts `-inf`) and `(inf, 0)` (always predicts `inf`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RrocPoint {
    #[serde(with = "crate::serde_ext")]
    pub over: f64,
    #[serde(with = "crate::serde_ext")]
    pub under: f64,
}

impl RrocPoint {
    pub const HEAVEN: RrocPoint = RrocPoint {
        over: 0.0,
        under: 0.0,
    };
    /// The model that always outputs `-inf`.
    pub const LOWER_EXTREME: RrocPoint = RrocPoint {
        over: 0.0,
        under: f64::NEG_INFINITY,
    };
    /// The model that always outputs `+inf`.
    pub const UPPER_EXTREME: RrocPoint = RrocPoint {
        over: f64::INFINITY,
        under: 0.0,
    };

    pub fn new(over: f64, under: f64) -> Result<Self> {
        if over.is_nan() || under.is_nan() || over < 0.0 || under > 0.0 {
            return Err(Error::InvalidPoint { over, under });
        }
        Ok(Self { over, under })
    }

    pub fn is_finite(&self) -> bool {
        self.over.is_finite() && self.under.is_finite()
    }

    /// Euclidean distance to heaven.
    pub fn mmse(&self) -> f64 {
        self.over.hypot(self.under)
    }

    /// Scales both coordinates by `1 / n`.
    pub fn normalized(&self, n: usize) -> Self {
        let n = n as f64;
        Self {
            over: self.over / n,
            under: self.under / n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryMetrics {
    pub mae: f64,
    pub mse: f64,
    /// Mean error.
    pub bias: f64,
    /// Population variance of the errors.
    pub variance: f64,
    /// Euclidean distance from the model's RROC point to heaven.
    pub mmse: f64,
}

/// An asymmetry `alpha` in `[0, 1]`. Higher values make under-estimation
/// costlier; `alpha = 0.5` is the symmetric absolute error.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct OperatingCondition {
    alpha: f64,
}

impl OperatingCondition {
    pub const SYMMETRIC: OperatingCondition = OperatingCondition { alpha: 0.5 };

    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(Self { alpha })
    }

    /// The operating condition whose isometrics have the given slope,
    /// `alpha = 1 / (1 + slope)`. An infinite slope maps to `alpha = 0`.
    pub fn from_slope(slope: f64) -> Result<Self> {
        if slope.is_nan() || slope < 0.0 {
            return Err(Error::Config(format!(
                "isometric slope must be >= 0, got {slope}"
            )));
        }
        if slope.is_infinite() {
            return Ok(Self { alpha: 0.0 });
        }
        Self::new(1.0 / (1.0 + slope))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Isometric slope `(1 - alpha) / alpha`; `inf` at `alpha = 0`.
    pub fn slope(&self) -> f64 {
        if self.alpha == 0.0 {
            f64::INFINITY
        } else {
            (1.0 - self.alpha) / self.alpha
        }
    }

    /// Cost weight of one unit of under-estimation, `2 alpha`.
    pub fn under_weight(&self) -> f64 {
        2.0 * self.alpha
    }

    /// Cost weight of one unit of over-estimation, `2 (1 - alpha)`.
    pub fn over_weight(&self) -> f64 {
        2.0 * (1.0 - self.alpha)
    }
}

impl TryFrom<f64> for OperatingCondition {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<OperatingCondition> for f64 {
    fn from(oc: OperatingCondition) -> f64 {
        oc.alpha
    }
}

/// Asymmetric absolute error of one prediction:
/// `2 alpha (y - y_hat)` below the target, `2 (1 - alpha) (y_hat - y)` otherwise.
pub fn asymmetric_loss(predicted: f64, actual: f64, oc: OperatingCondition) -> f64 {
    if predicted < actual {
        oc.under_weight() * (actual - predicted)
    } else {
        oc.over_weight() * (predicted - actual)
    }
}

/// Total asymmetric absolute loss of a model read off its RROC point:
/// `-2 alpha UNDER + 2 (1 - alpha) OVER`.
///
/// A zero weight times an infinite coordinate counts as zero, so the extreme
/// models cost nothing at the operating condition that makes their error free.
pub fn total_loss(point: RrocPoint, oc: OperatingCondition) -> f64 {
    weighted(oc.over_weight(), point.over) - weighted(oc.under_weight(), point.under)
}

fn weighted(weight: f64, amount: f64) -> f64 {
    if weight == 0.0 {
        0.0
    } else {
        weight * amount
    }
}
