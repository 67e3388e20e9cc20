//! JSON ensemble files.
//!
//! ```json
//! { "dim": 2, "items": [ { "weight": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]] }, ... ] }
//! ```
//!
//! Matrices are row-major with complex entries stored as `[re, im]`. An optional
//! `"bases"` array groups item indices into the sending bases of a QKD protocol.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Ensemble;
use crate::error::{EcccError, Result};
use crate::quantum::{c, CMatrix, DensityMatrix};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FileItem {
    pub weight: f64,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EnsembleFile {
    pub dim: usize,
    pub items: Vec<FileItem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
}

impl EnsembleFile {
    pub fn from_ensemble(e: &Ensemble) -> Self {
        let items = e
            .items()
            .iter()
            .map(|it| {
                let m = it.state.matrix();
                FileItem {
                    weight: it.weight,
                    matrix: (0..m.nrows())
                        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                        .collect(),
                }
            })
            .collect();
        Self {
            dim: e.dim(),
            items,
            bases: None,
        }
    }

    /// Validated states in file order, zero weights included.
    pub fn states(&self) -> Result<Vec<(f64, DensityMatrix)>> {
        if self.dim == 0 {
            return Err(EcccError::ZeroDimension);
        }
        self.items
            .iter()
            .enumerate()
            .map(|(index, item)| item.to_state(self.dim).map_err(|e| e.at_item(index)))
            .collect()
    }

    pub fn to_ensemble(&self) -> Result<Ensemble> {
        Ensemble::new(self.states()?)
    }
}

impl FileItem {
    fn to_state(&self, dim: usize) -> Result<(f64, DensityMatrix)> {
        if self.matrix.len() != dim {
            return Err(EcccError::DimensionMismatch {
                expected: dim,
                found: self.matrix.len(),
            });
        }
        if let Some(row) = self.matrix.iter().find(|r| r.len() != dim) {
            return Err(EcccError::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        let m = CMatrix::from_fn(dim, dim, |i, j| {
            let [re, im] = self.matrix[i][j];
            c(re, im)
        });
        Ok((self.weight, DensityMatrix::new(m)?))
    }
}

pub fn parse_ensemble(text: &str) -> Result<Ensemble> {
    serde_json::from_str::<EnsembleFile>(text)?.to_ensemble()
}

pub fn load_ensemble(path: impl AsRef<Path>) -> Result<Ensemble> {
    parse_ensemble(&fs::read_to_string(path)?)
}

pub fn save_ensemble(e: &Ensemble, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&EnsembleFile::from_ensemble(e))?;
    fs::write(path, text)?;
    Ok(())
}
