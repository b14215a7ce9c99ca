//! The ten-example dataset and four models used throughout the docs, the
//! runnable examples and the test suites.
//!
//! * `m1` under-estimates (negative bias).
//! * `m2` is unbiased: `OVER = -UNDER`.
//! * `m3` over-estimates (positive bias).
//! * `m4` has tied errors: two triples and one pair.

use crate::dataset::{Dataset, ModelPredictions};
use crate::metrics::ErrorVector;

pub const ACTUAL: [f64; 10] = [
    0.211, 2.725, 1.933, 3.242, 7.858, 6.061, 7.173, 3.082, 0.894, 1.203,
];

pub const M1: [f64; 10] = [
    -0.082, 3.323, 2.320, 1.080, 7.893, 4.983, 5.121, 3.442, 2.083, 1.112,
];

pub const M2: [f64; 10] = [
    0.786, 2.078, 0.587, 1.676, 9.052, 5.875, 6.885, 3.038, 4.097, 0.308,
];

pub const M3: [f64; 10] = [
    1.253, 4.232, 1.734, 5.325, 6.842, 9.325, 8.232, 3.525, 1.352, 1.778,
];

pub const M4: [f64; 10] = [
    0.123, 1.221, 1.845, 4.573, 8.558, 7.392, 5.669, 1.578, 0.806, 1.245,
];

pub const MODEL_IDS: [&str; 4] = ["m1", "m2", "m3", "m4"];

pub fn predictions(id: &str) -> &'static [f64; 10] {
    match id {
        "m1" => &M1,
        "m2" => &M2,
        "m3" => &M3,
        "m4" => &M4,
        other => panic!("unknown sample model `{other}`"),
    }
}

/// Errors of one sample model. Panics on an unknown id.
pub fn errors(id: &str) -> ErrorVector {
    ErrorVector::from_predictions(predictions(id), &ACTUAL).expect("sample data is valid")
}

/// All four models.
pub fn dataset() -> Dataset {
    subset(&MODEL_IDS)
}

pub fn subset(ids: &[&str]) -> Dataset {
    let models = ids
        .iter()
        .map(|id| ModelPredictions {
            id: id.to_string(),
            predicted: predictions(id).to_vec(),
        })
        .collect();
    Dataset::new(ACTUAL.to_vec(), models).expect("sample data is valid")
}

/// CSV text for the given models, in the ingestion layout.
pub fn csv(ids: &[&str]) -> String {
    subset(ids).to_csv_string().expect("in-memory write")
}
