//! Actual values plus one or more models' predictions, and their CSV form.
//!
//! The CSV layout is a header row with an `actual` column and either a single
//! `predicted` column or any number of `predicted:<model-id>` columns. Other
//! columns are ignored. Row order is preserved.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::{check_finite, ErrorVector};

/// Model id used for a bare `predicted` column.
pub const DEFAULT_MODEL_ID: &str = "model";

const ACTUAL: &str = "actual";
const PREDICTED: &str = "predicted";

#[derive(Debug, Clone, PartialEq)]
pub struct ModelPredictions {
    pub id: String,
    pub predicted: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    actual: Vec<f64>,
    models: Vec<ModelPredictions>,
}

impl Dataset {
    pub fn new(actual: Vec<f64>, models: Vec<ModelPredictions>) -> Result<Self> {
        if actual.is_empty() {
            return Err(Error::Empty("no rows"));
        }
        if models.is_empty() {
            return Err(Error::Empty("no models"));
        }
        check_finite(&actual)?;
        for (i, m) in models.iter().enumerate() {
            if m.predicted.len() != actual.len() {
                return Err(Error::LengthMismatch {
                    left: m.predicted.len(),
                    right: actual.len(),
                });
            }
            check_finite(&m.predicted)?;
            if models[..i].iter().any(|other| other.id == m.id) {
                return Err(Error::Config(format!("duplicate model id `{}`", m.id)));
            }
        }
        Ok(Self { actual, models })
    }

    pub fn n(&self) -> usize {
        self.actual.len()
    }

    pub fn actual(&self) -> &[f64] {
        &self.actual
    }

    pub fn models(&self) -> &[ModelPredictions] {
        &self.models
    }

    pub fn model(&self, id: &str) -> Option<&ModelPredictions> {
        self.models.iter().find(|m| m.id == id)
    }

    pub fn errors(&self, id: &str) -> Option<ErrorVector> {
        let m = self.model(id)?;
        // lengths and finiteness were validated on construction
        ErrorVector::from_predictions(&m.predicted, &self.actual).ok()
    }

    /// Error vectors for every model, in column order.
    pub fn error_vectors(&self) -> Vec<(String, ErrorVector)> {
        self.models
            .iter()
            .map(|m| {
                let e = ErrorVector::from_predictions(&m.predicted, &self.actual)
                    .expect("validated dataset");
                (m.id.clone(), e)
            })
            .collect()
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_csv_reader(file)
    }

    pub fn from_csv_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.is_empty() || headers.iter().all(str::is_empty) {
            return Err(Error::Empty("no rows"));
        }

        let actual_col = headers
            .iter()
            .position(|h| h == ACTUAL)
            .ok_or_else(|| Error::MissingColumn(ACTUAL.to_string()))?;
        let mut model_cols = Vec::new();
        for (i, h) in headers.iter().enumerate() {
            if h == PREDICTED {
                model_cols.push((i, DEFAULT_MODEL_ID.to_string()));
            } else if let Some(id) = h.strip_prefix("predicted:") {
                if id.is_empty() {
                    return Err(Error::Config(format!("empty model id in column {}", i + 1)));
                }
                model_cols.push((i, id.to_string()));
            }
        }
        if model_cols.is_empty() {
            return Err(Error::MissingColumn(format!(
                "{PREDICTED} or {PREDICTED}:<id>"
            )));
        }

        let mut actual = Vec::new();
        let mut predicted: Vec<Vec<f64>> = vec![Vec::new(); model_cols.len()];
        for (row_idx, record) in rdr.records().enumerate() {
            let record = record?;
            let row = row_idx + 1;
            let parse = |col: usize| -> Result<f64> {
                let raw = record.get(col).unwrap_or("");
                raw.parse::<f64>().map_err(|_| Error::Parse {
                    row,
                    column: headers[col].to_string(),
                    value: raw.to_string(),
                })
            };
            actual.push(parse(actual_col)?);
            for (slot, (col, _)) in predicted.iter_mut().zip(&model_cols) {
                slot.push(parse(*col)?);
            }
        }

        let models = model_cols
            .into_iter()
            .zip(predicted)
            .map(|((_, id), predicted)| ModelPredictions { id, predicted })
            .collect();
        Self::new(actual, models)
    }

    /// Writes the `actual,predicted:<id>,...` layout. Floats use the
    /// shortest representation that parses back to the same value.
    pub fn to_csv_writer(&self, writer: impl Write) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec![ACTUAL.to_string()];
        header.extend(self.models.iter().map(|m| format!("{PREDICTED}:{}", m.id)));
        wtr.write_record(&header)?;
        for i in 0..self.n() {
            let mut row = vec![self.actual[i].to_string()];
            row.extend(self.models.iter().map(|m| m.predicted[i].to_string()));
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.to_csv_writer(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv writer emits utf-8"))
    }
}

/// Loads a prediction CSV from disk.
pub fn load_predictions(path: impl AsRef<Path>) -> Result<Dataset> {
    Dataset::from_csv_path(path)
}
