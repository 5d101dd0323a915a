//! File formats for states, factors, and harness reports.
//!
//! Everything is JSON with complex entries encoded as `[re, im]` pairs in
//! row-major rows. Floats are written in scientific notation with 17
//! significant digits, which round-trips every finite `f64` bit-exactly and
//! keeps repeated runs byte-identical.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::factor::SpptFactor;
use crate::matrix::{C64, ComplexMatrix};
use crate::tolerance::Tolerance;

/// A density matrix on `C^M (x) C^N` with provenance metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    /// `[M, N]`.
    pub dims: [usize; 2],
    /// Whether the entries are normalized to unit trace.
    pub normalized: bool,
    /// `MN x MN` complex entries, row-major, each as `[re, im]`.
    pub entries: Vec<Vec<[f64; 2]>>,
    /// Free-form provenance (family id, parameters, seeds).
    pub metadata: BTreeMap<String, String>,
}

/// One strictly upper factor block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorBlock {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// A canonical factor: diagonal blocks, strictly upper blocks, and the
/// residual of reassembling the state it was extracted from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorFile {
    pub dims: [usize; 2],
    pub x_blocks: Vec<Vec<Vec<[f64; 2]>>>,
    pub s_blocks: Vec<FactorBlock>,
    pub reconstruction_residual: f64,
}

impl MatrixFile {
    pub fn from_state(state: &BipartiteState, metadata: BTreeMap<String, String>) -> Self {
        Self {
            dims: [state.dim_a(), state.dim_b()],
            normalized: state.is_normalized(),
            entries: matrix_to_rows(state.matrix()),
            metadata,
        }
    }

    /// Validate the stored entries as a bipartite state.
    pub fn to_state(&self, tol: &Tolerance) -> Result<BipartiteState> {
        let matrix = rows_to_matrix(&self.entries)?;
        BipartiteState::from_matrix(matrix, self.dims[0], self.dims[1], false, tol)
    }
}

impl FactorFile {
    pub fn from_factor(factor: &SpptFactor, reconstruction_residual: f64) -> Self {
        Self {
            dims: [factor.dim_a(), factor.dim_b()],
            x_blocks: (0..factor.dim_a())
                .map(|i| matrix_to_rows(factor.x_block(i)))
                .collect(),
            s_blocks: factor
                .s_blocks()
                .map(|(&(i, j), s)| FactorBlock {
                    i,
                    j,
                    entries: matrix_to_rows(s),
                })
                .collect(),
            reconstruction_residual,
        }
    }
}

/// Row-major `[re, im]` encoding of a matrix.
pub fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

/// Decode a rectangular `[re, im]` array, rejecting ragged rows and
/// non-finite values.
pub fn rows_to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(Error::dims("matrix entries are empty"));
    }
    let mut entries = Vec::with_capacity(nrows * ncols);
    for row in rows {
        if row.len() != ncols {
            return Err(Error::dims(format!(
                "ragged matrix rows: expected {ncols} columns, got {}",
                row.len()
            )));
        }
        for &[re, im] in row {
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::param("matrix entries must be finite"));
            }
            entries.push(C64::new(re, im));
        }
    }
    Ok(ComplexMatrix::new(nrows, ncols, entries))
}

/// JSON formatter writing every float in scientific notation with 17
/// significant digits.
struct SciNotationFormatter;

impl serde_json::ser::Formatter for SciNotationFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize with the fixed-precision float encoding. The output is
/// deterministic for a given value.
pub fn to_json<T: Serialize>(value: &T) -> std::io::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciNotationFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    std::fs::write(path, to_json(value)?)
}

pub fn read_json_file<T: for<'de> Deserialize<'de>>(path: &Path) -> std::io::Result<T> {
    let text = std::fs::read_to_string(path)?;
    from_json(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}
