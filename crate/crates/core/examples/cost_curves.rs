//! Cost curves: mean loss against alpha for a model with no adjustment, the
//! ideal constant shift, and a shift learned on separate training data.
//!
//! Run with `cargo run --example cost_curves`.

use rroc::metrics::ErrorVector;
use rroc::sample_data;
use rroc::shift::{
    alpha_grid, cost_curve, optimal_constant_shift, trained_constant_shift, ShiftMethod,
};

fn main() -> rroc::Result<()> {
    let test = sample_data::errors("m1");
    // a training set whose errors run a little high
    let train = ErrorVector::new(test.iter().map(|e| e + 0.4).collect())?;

    let grid = alpha_grid(11)?;
    let none = cost_curve("m1", &test, &ShiftMethod::None, &grid)?;
    let optimal = cost_curve("m1", &test, &ShiftMethod::OptimalConstant, &grid)?;
    let trained = cost_curve("m1", &test, &ShiftMethod::trained(train.clone()), &grid)?;

    println!(
        "{:>5} {:>8} {:>10} {:>9}",
        "alpha", "none", "trained", "optimal"
    );
    for i in 0..grid.len() {
        println!(
            "{:>5.1} {:>8.4} {:>10.4} {:>9.4}",
            none.alphas[i], none.losses[i], trained.losses[i], optimal.losses[i]
        );
    }

    let oc = grid[8];
    let best = optimal_constant_shift(&test, oc);
    let learned = trained_constant_shift(&train, oc, &test);
    println!(
        "\nat alpha {:.1}: optimal shift {:+.3} (loss {:.4}), trained shift {:+.3} (loss {:.4}, regret {:.4})",
        oc.alpha(),
        best.shift,
        best.loss,
        learned.shift,
        learned.loss,
        learned.loss - best.loss
    );
    Ok(())
}
