//! JSON instance files.
//!
//! ```json
//! { "schema_version": 1, "n": 2,
//!   "x": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!   "y": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
//!   "metadata": { "generator": "chain", "seed": 7 } }
//! ```
//!
//! Matrices are row-major with each entry stored as `[re, im]`. Floats are
//! written in shortest round-trip form and parsed with correct rounding, so
//! a write/read cycle reproduces every bit.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::LiePair;
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;

type RowMajor = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub n: usize,
    pub x: RowMajor,
    pub y: RowMajor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

fn to_row_major(m: &CMatrix) -> RowMajor {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn from_row_major(name: &str, n: usize, rows: &RowMajor) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::SchemaError(format!("{name} must be {n}x{n}")));
    }
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    CMatrix::from_rows(&rows).map_err(|_| Error::SchemaError(format!("{name} has non-finite entries")))
}

impl InstanceFile {
    pub fn from_pair(p: &LiePair, metadata: Option<Value>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n: p.n(),
            x: to_row_major(p.x()),
            y: to_row_major(p.y()),
            metadata,
        }
    }

    /// Rebuilds and re-validates the pair.
    pub fn to_pair(&self, tol: &Tolerances) -> Result<LiePair> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaError(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.n == 0 {
            return Err(Error::SchemaError("n must be positive".into()));
        }
        let x = from_row_major("x", self.n, &self.x)?;
        let y = from_row_major("y", self.n, &self.y)?;
        LiePair::validate(x, y, tol)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }

    /// Hex SHA-256 of the operator data (metadata excluded).
    pub fn content_hash(&self) -> String {
        let body = serde_json::to_string(&(&self.n, &self.x, &self.y)).expect("serializes");
        Sha256::digest(body.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
