//! Plugging a new shift choice method into the cost-curve machinery by
//! implementing `ShiftRule`.
//!
//! Run with `cargo run --example custom_shift_rule`.

use rroc::metrics::{ErrorVector, OperatingCondition};
use rroc::sample_data;
use rroc::shift::{alpha_grid, cost_curve, zero_bias_shift, ShiftMethod, ShiftRule};

/// Removes the bias whatever the operating condition: the squared-error
/// optimum, applied to an absolute-loss problem.
struct ZeroBias;

impl ShiftRule for ZeroBias {
    fn name(&self) -> &str {
        "zero_bias"
    }

    fn choose(&self, errors: &ErrorVector, _oc: OperatingCondition) -> f64 {
        zero_bias_shift(errors)
    }
}

/// Moves predictions up in proportion to how costly under-estimation is.
struct Linear {
    scale: f64,
}

impl ShiftRule for Linear {
    fn name(&self) -> &str {
        "linear"
    }

    fn choose(&self, _errors: &ErrorVector, oc: OperatingCondition) -> f64 {
        self.scale * (oc.alpha() - 0.5)
    }
}

fn main() -> rroc::Result<()> {
    let e = sample_data::errors("m3");
    let grid = alpha_grid(11)?;
    let rules: Vec<Box<dyn ShiftRule>> = vec![
        Box::new(ShiftMethod::None),
        Box::new(ZeroBias),
        Box::new(Linear { scale: 2.0 }),
        Box::new(ShiftMethod::OptimalConstant),
    ];
    let curves = rules
        .iter()
        .map(|r| cost_curve("m3", &e, r.as_ref(), &grid))
        .collect::<rroc::Result<Vec<_>>>()?;

    print!("{:>5}", "alpha");
    for c in &curves {
        print!(" {:>16}", c.method);
    }
    println!();
    for (i, oc) in grid.iter().enumerate() {
        print!("{:>5.1}", oc.alpha());
        for c in &curves {
            print!(" {:>16.4}", c.losses[i]);
        }
        println!();
    }
    let area = |i: usize| curves[i].losses.iter().sum::<f64>() / grid.len() as f64;
    println!("\naverage loss over alpha:");
    for (i, c) in curves.iter().enumerate() {
        println!("  {:<16} {:.4}", c.method, area(i));
    }
    Ok(())
}
