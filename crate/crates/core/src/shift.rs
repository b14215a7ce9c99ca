//! Shift choice (reframing) methods and cost curves.
//!
//! A shift choice method maps an operating condition to the constant added
//! to a model's predictions before deployment. A cost curve plots the mean
//! asymmetric loss of a model under a method against `alpha`.

use serde::{Deserialize, Serialize};

use crate::analysis::RELATIVE_EPSILON;
use crate::curve::RrocCurve;
use crate::error::{Error, Result};
use crate::metrics::{check_finite, total_loss, ErrorVector, OperatingCondition, RrocPoint};

/// Adds `shift` to every prediction.
pub fn apply_shift(predictions: &[f64], shift: f64) -> Result<Vec<f64>> {
    if !shift.is_finite() {
        return Err(Error::NonFinite {
            index: 0,
            value: shift,
        });
    }
    check_finite(predictions)?;
    Ok(predictions.iter().map(|p| p + shift).collect())
}

/// The shift that removes the error bias, `-mean(e)`. This is the
/// squared-error optimum, not the asymmetric absolute one.
pub fn zero_bias_shift(errors: &ErrorVector) -> f64 {
    -errors.mean()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftChoice {
    pub shift: f64,
    pub loss: f64,
}

/// The constant shift minimising total asymmetric absolute loss.
///
/// The loss is piecewise linear and convex in the shift with kinks at
/// `-e_i`, so the minimum is attained at one of those candidates (the
/// negated `alpha`-quantile of the errors). Candidates whose losses tie
/// within `1e-12` relative resolve to the smallest `|shift|`.
pub fn optimal_constant_shift(errors: &ErrorVector, oc: OperatingCondition) -> ShiftChoice {
    let curve = RrocCurve::from_errors("", errors);
    optimal_on_curve(&curve, oc)
}

pub(crate) fn optimal_on_curve(curve: &RrocCurve, oc: OperatingCondition) -> ShiftChoice {
    let mut best: Option<ShiftChoice> = None;
    for v in curve.interior() {
        let loss = total_loss(v.point, oc);
        let better = match best {
            None => true,
            Some(b) => {
                let tie = (loss - b.loss).abs() <= RELATIVE_EPSILON * loss.abs().max(b.loss.abs());
                if tie {
                    v.shift.abs() < b.shift.abs()
                } else {
                    loss < b.loss
                }
            }
        };
        if better {
            best = Some(ShiftChoice {
                shift: v.shift,
                loss,
            });
        }
    }
    best.expect("curves from error vectors have interior vertices")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainedShift {
    /// Shift chosen on the training errors.
    pub shift: f64,
    /// Test-set position after applying the shift.
    pub point: RrocPoint,
    /// Test-set total loss after applying the shift.
    pub loss: f64,
}

/// Picks the optimal shift on `train` and deploys it on `test`.
pub fn trained_constant_shift(
    train: &ErrorVector,
    oc: OperatingCondition,
    test: &ErrorVector,
) -> TrainedShift {
    let shift = optimal_constant_shift(train, oc).shift;
    let point = test
        .shifted(shift)
        .expect("shift from finite errors is finite")
        .over_under();
    TrainedShift {
        shift,
        point,
        loss: total_loss(point, oc),
    }
}

/// A rule choosing the shift to deploy for a model at an operating
/// condition, given the errors the model is evaluated on.
pub trait ShiftRule {
    fn name(&self) -> &str;

    fn choose(&self, errors: &ErrorVector, oc: OperatingCondition) -> f64;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShiftMethod {
    /// No adjustment: `s = 0` everywhere.
    None,
    /// The ideal constant shift for the evaluated errors themselves.
    OptimalConstant,
    /// The optimal constant shift for a separate training set.
    TrainedConstant {
        #[serde(skip_serializing, default = "empty_train")]
        train: Option<ErrorVector>,
    },
}

fn empty_train() -> Option<ErrorVector> {
    None
}

impl ShiftMethod {
    pub fn trained(train: ErrorVector) -> Self {
        ShiftMethod::TrainedConstant { train: Some(train) }
    }
}

impl ShiftRule for ShiftMethod {
    fn name(&self) -> &str {
        match self {
            ShiftMethod::None => "none",
            ShiftMethod::OptimalConstant => "optimal_constant",
            ShiftMethod::TrainedConstant { .. } => "trained_constant",
        }
    }

    fn choose(&self, errors: &ErrorVector, oc: OperatingCondition) -> f64 {
        match self {
            ShiftMethod::None => 0.0,
            ShiftMethod::OptimalConstant => optimal_constant_shift(errors, oc).shift,
            ShiftMethod::TrainedConstant { train } => {
                let train = train
                    .as_ref()
                    .expect("trained_constant needs training errors");
                optimal_constant_shift(train, oc).shift
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostCurve {
    pub model_id: String,
    pub method: String,
    pub alphas: Vec<f64>,
    pub shifts: Vec<f64>,
    /// Mean asymmetric loss per example at each alpha.
    pub losses: Vec<f64>,
}

/// `count` evenly spaced asymmetries over `[0, 1]`, endpoints included.
pub fn alpha_grid(count: usize) -> Result<Vec<OperatingCondition>> {
    if count < 2 {
        return Err(Error::Config(format!(
            "alpha grid needs at least 2 points, got {count}"
        )));
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| OperatingCondition::new((i as f64 / last).min(1.0)))
        .collect()
}

/// Default cost-curve resolution.
pub const DEFAULT_ALPHA_POINTS: usize = 101;

pub fn cost_curve<R: ShiftRule + ?Sized>(
    model_id: &str,
    errors: &ErrorVector,
    method: &R,
    alphas: &[OperatingCondition],
) -> Result<CostCurve> {
    if alphas.is_empty() {
        return Err(Error::Empty("alpha grid"));
    }
    let n = errors.len() as f64;
    let mut shifts = Vec::with_capacity(alphas.len());
    let mut losses = Vec::with_capacity(alphas.len());
    for &oc in alphas {
        let s = method.choose(errors, oc);
        let point = if s == 0.0 {
            errors.over_under()
        } else {
            errors.shifted(s)?.over_under()
        };
        shifts.push(s);
        losses.push(total_loss(point, oc) / n);
    }
    Ok(CostCurve {
        model_id: model_id.to_string(),
        method: method.name().to_string(),
        alphas: alphas.iter().map(|a| a.alpha()).collect(),
        shifts,
        losses,
    })
}

/// Optimal-shift cost curve read directly off the RROC curve: at each alpha,
/// the least vertex loss divided by `n`.
pub fn optimal_cost_from_curve(curve: &RrocCurve, alphas: &[OperatingCondition]) -> Vec<f64> {
    alphas
        .iter()
        .map(|&oc| optimal_on_curve(curve, oc).loss / curve.n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::asymmetric_loss;
    use crate::sample_data;

    fn oc(alpha: f64) -> OperatingCondition {
        OperatingCondition::new(alpha).unwrap()
    }

    fn exhaustive_loss(e: &ErrorVector, s: f64, oc: OperatingCondition) -> f64 {
        e.iter().map(|err| asymmetric_loss(err + s, 0.0, oc)).sum()
    }

    #[test]
    fn apply_shift_identity_and_inverse() {
        let p = sample_data::M1;
        assert_eq!(apply_shift(&p, 0.0).unwrap(), p.to_vec());
        let back = apply_shift(&apply_shift(&p, 1.75).unwrap(), -1.75).unwrap();
        assert!(back.iter().zip(&p).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(apply_shift(&p, f64::NAN).is_err());
    }

    #[test]
    fn bias_removing_shift() {
        let e = sample_data::errors("m1");
        let s = zero_bias_shift(&e);
        assert!((s - 0.3107).abs() < 1e-12);
        let shifted = apply_shift(&sample_data::M1, s).unwrap();
        let e2 = ErrorVector::from_predictions(&shifted, &sample_data::ACTUAL).unwrap();
        assert!(e2.mean().abs() < 1e-12);
    }

    #[test]
    fn single_example_has_zero_loss_shift() {
        let e = ErrorVector::new(vec![-4.2]).unwrap();
        for a in [0.0, 0.3, 1.0] {
            let c = optimal_constant_shift(&e, oc(a));
            assert_eq!(c.shift, 4.2);
            assert_eq!(c.loss, 0.0);
        }
    }

    #[test]
    fn alpha_zero_pushes_everything_under() {
        let e = sample_data::errors("m3");
        let c = optimal_constant_shift(&e, oc(0.0));
        assert_eq!(c.shift, -e.iter().fold(f64::MIN, f64::max));
        assert_eq!(c.loss, 0.0);
        let c = optimal_constant_shift(&e, oc(1.0));
        assert_eq!(c.shift, -e.iter().fold(f64::MAX, f64::min));
        assert_eq!(c.loss, 0.0);
    }

    #[test]
    fn symmetric_optimum_is_a_median_shift() {
        let e = sample_data::errors("m1");
        let c = optimal_constant_shift(&e, OperatingCondition::SYMMETRIC);
        let mut sorted = e.as_slice().to_vec();
        sorted.sort_by(f64::total_cmp);
        // even n: the plateau spans the two middle errors, smallest |s| wins
        let (lo, hi) = (-sorted[5], -sorted[4]);
        assert!(c.shift == lo || c.shift == hi);
        assert_eq!(c.shift.abs(), lo.abs().min(hi.abs()));
        // brute scan over candidates and midpoints
        let mut cands: Vec<f64> = e.iter().map(|x| -x).collect();
        cands.extend(sorted.windows(2).map(|w| -(w[0] + w[1]) / 2.0));
        let brute = cands
            .iter()
            .map(|&s| exhaustive_loss(&e, s, OperatingCondition::SYMMETRIC))
            .fold(f64::INFINITY, f64::min);
        assert!((c.loss - brute).abs() < 1e-9);
    }

    #[test]
    fn trained_equals_optimal_on_same_data() {
        let e = sample_data::errors("m2");
        for a in [0.1, 0.5, 0.8] {
            let t = trained_constant_shift(&e, oc(a), &e);
            let o = optimal_constant_shift(&e, oc(a));
            assert_eq!(t.shift, o.shift);
            assert!((t.loss - o.loss).abs() < 1e-12);
        }
    }

    #[test]
    fn regret_grows_with_train_test_offset() {
        let test = sample_data::errors("m1");
        let a = oc(0.65);
        let best = optimal_constant_shift(&test, a).loss;
        let mut prev = 0.0;
        for c in [0.5, 1.0, 2.0, 4.0] {
            let train = test.shifted(c).unwrap();
            let regret = trained_constant_shift(&train, a, &test).loss - best;
            assert!(regret > prev, "offset {c}: regret {regret} <= {prev}");
            prev = regret;
        }
    }

    #[test]
    fn none_cost_curve_is_affine() {
        let e = sample_data::errors("m1");
        let grid = alpha_grid(DEFAULT_ALPHA_POINTS).unwrap();
        let cc = cost_curve("m1", &e, &ShiftMethod::None, &grid).unwrap();
        assert_eq!(cc.method, "none");
        assert!((cc.losses[0] - 0.5138).abs() < 5e-4);
        assert!((cc.losses[100] - 1.1352).abs() < 5e-4);
        for (a, l) in cc.alphas.iter().zip(&cc.losses) {
            let line = (1.0 - a) * cc.losses[0] + a * cc.losses[100];
            assert!((l - line).abs() < 1e-12);
        }
    }

    #[test]
    fn optimal_cost_curve_is_below_none() {
        let e = sample_data::errors("m3");
        let grid = alpha_grid(DEFAULT_ALPHA_POINTS).unwrap();
        let none = cost_curve("m3", &e, &ShiftMethod::None, &grid).unwrap();
        let opt = cost_curve("m3", &e, &ShiftMethod::OptimalConstant, &grid).unwrap();
        assert_eq!(opt.losses[0], 0.0);
        assert_eq!(opt.losses[100], 0.0);
        assert!(opt
            .losses
            .iter()
            .zip(&none.losses)
            .all(|(o, n)| *o <= n + 1e-12));

        let curve = RrocCurve::from_errors("m3", &e);
        let dual = optimal_cost_from_curve(&curve, &grid);
        assert!(dual
            .iter()
            .zip(&opt.losses)
            .all(|(d, o)| (d - o).abs() < 1e-12));
    }

    #[test]
    fn grids_and_empty_inputs() {
        assert!(alpha_grid(1).is_err());
        let g = alpha_grid(3).unwrap();
        assert_eq!(
            g.iter().map(|a| a.alpha()).collect::<Vec<_>>(),
            [0.0, 0.5, 1.0]
        );
        let e = sample_data::errors("m1");
        assert!(cost_curve("m1", &e, &ShiftMethod::None, &[]).is_err());
    }
}
