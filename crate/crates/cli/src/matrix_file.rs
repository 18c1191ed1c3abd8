//! On-disk matrix format: a JSON object with the dimension and rows of
//! `[re, im]` pairs.
//!
//! ```json
//! {"n": 2, "data": [[[0.0, 0.0], [2.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}
//! ```
//!
//! Floats are written in shortest round-trip form, so a written file parses
//! back to the identical matrix.

use std::fs;
use std::path::Path;

use numrad::{Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { n: m.n(), data: m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect() }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix, String> {
        if self.n == 0 {
            return Err("n must be at least 1".into());
        }
        if self.data.len() != self.n {
            return Err(format!("declared n = {} but found {} rows", self.n, self.data.len()));
        }
        if let Some((i, row)) = self.data.iter().enumerate().find(|(_, r)| r.len() != self.n) {
            return Err(format!("row {i} has {} entries, expected {}", row.len(), self.n));
        }
        let rows = self.data.into_iter().map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
        ComplexMatrix::from_rows(rows).map_err(|e| e.to_string())
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.into_matrix()
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix file serializes")
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    fs::write(path, to_json(m) + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
