use std::path::{Path, PathBuf};

use agnostic_core::procedures::{DMatrix, DVector, RegressionData};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged { line: u64, expected: usize, found: usize },
    #[error("line {line}, column '{column}': cell is blank")]
    Blank { line: u64, column: String },
    #[error("line {line}, column '{column}': '{value}' is not a finite number")]
    NotNumeric { line: u64, column: String, value: String },
    #[error("no column named '{0}'")]
    MissingColumn(String),
    #[error("need at least 2 data rows, found {0}")]
    TooFewRows(usize),
    #[error(transparent)]
    Model(#[from] agnostic_core::Error),
}

/// Rectangular numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn read(path: &Path) -> Result<Self, LoadError> {
        let file = std::fs::File::open(path).map_err(|source| LoadError::Io { path: path.to_owned(), source })?;
        Self::from_reader(file)
    }

    pub fn from_reader<R: std::io::Read>(reader: R) -> Result<Self, LoadError> {
        let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
        let columns: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != columns.len() {
                return Err(LoadError::Ragged { line, expected: columns.len(), found: record.len() });
            }
            let row = record
                .iter()
                .zip(&columns)
                .map(|(cell, column)| parse_cell(cell, line, column))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn parse_cell(cell: &str, line: u64, column: &str) -> Result<f64, LoadError> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Err(LoadError::Blank { line, column: column.to_string() });
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(LoadError::NotNumeric { line, column: column.to_string(), value: cell.to_string() }),
    }
}

pub const INTERCEPT: &str = "(Intercept)";

/// Regression of `response` on every other column, with an intercept first.
/// Returns the data and the coefficient names.
pub fn load_csv(path: &Path, response: &str) -> Result<(RegressionData, Vec<String>), LoadError> {
    to_regression(&Dataset::read(path)?, response)
}

pub fn to_regression(ds: &Dataset, response: &str) -> Result<(RegressionData, Vec<String>), LoadError> {
    let y = ds.column_index(response).ok_or_else(|| LoadError::MissingColumn(response.to_string()))?;
    if ds.rows.len() < 2 {
        return Err(LoadError::TooFewRows(ds.rows.len()));
    }
    let predictors: Vec<usize> = (0..ds.columns.len()).filter(|&j| j != y).collect();
    let design = DMatrix::from_fn(ds.rows.len(), predictors.len() + 1, |i, j| {
        if j == 0 {
            1.0
        } else {
            ds.rows[i][predictors[j - 1]]
        }
    });
    let response_vec = DVector::from_iterator(ds.rows.len(), ds.rows.iter().map(|r| r[y]));
    let names = std::iter::once(INTERCEPT.to_string())
        .chain(predictors.iter().map(|&j| ds.columns[j].clone()))
        .collect();
    Ok((RegressionData::new(design, response_vec)?, names))
}
