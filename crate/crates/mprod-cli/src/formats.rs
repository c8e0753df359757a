//! JSON interchange files. Complex entries are `[re, im]` pairs so the
//! format stays unambiguous and diff-friendly; numbers round-trip
//! value-exactly through serde_json's shortest-representation printing.

use mprod_core::{CMatrix, MprodError, Result, Tensor3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// An order-3 tensor: `data[k][i][j]` is entry (i, j) of frontal slice k.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorFile {
    pub dims: [usize; 3],
    pub data: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

/// A single complex matrix, `data[i][j] = [re, im]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

fn bad(what: &str, detail: String) -> MprodError {
    MprodError::ContractViolation(format!("{what}: {detail}"))
}

impl TensorFile {
    pub fn from_tensor(t: &Tensor3, name: Option<String>) -> Self {
        let (n1, n2, n3) = t.dims();
        let data = (0..n3)
            .map(|k| {
                let s = t.slice(k);
                (0..n1)
                    .map(|i| {
                        (0..n2)
                            .map(|j| {
                                let z = s[(i, j)];
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { dims: [n1, n2, n3], data, name }
    }

    pub fn to_tensor(&self) -> Result<Tensor3> {
        let [n1, n2, n3] = self.dims;
        if n1 == 0 || n2 == 0 || n3 == 0 {
            return Err(bad("tensor file", format!("dims must be positive, got {:?}", self.dims)));
        }
        if self.data.len() != n3 {
            return Err(bad(
                "tensor file",
                format!("{} slices but dims say {n3}", self.data.len()),
            ));
        }
        for (k, slice) in self.data.iter().enumerate() {
            if slice.len() != n1 {
                return Err(bad(
                    "tensor file",
                    format!("slice {k} has {} rows but dims say {n1}", slice.len()),
                ));
            }
            for (i, row) in slice.iter().enumerate() {
                if row.len() != n2 {
                    return Err(bad(
                        "tensor file",
                        format!("slice {k} row {i} has {} entries but dims say {n2}", row.len()),
                    ));
                }
            }
        }
        Ok(Tensor3::from_fn(n1, n2, n3, |i, j, k| {
            let [re, im] = self.data[k][i][j];
            Complex64::new(re, im)
        }))
    }
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix, name: Option<String>) -> Self {
        let data = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| {
                        let z = m[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { rows: m.nrows(), cols: m.ncols(), data, name }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(bad("matrix file", "rows and cols must be positive".into()));
        }
        if self.data.len() != self.rows {
            return Err(bad(
                "matrix file",
                format!("{} rows of data but rows = {}", self.data.len(), self.rows),
            ));
        }
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                return Err(bad(
                    "matrix file",
                    format!("row {i} has {} entries but cols = {}", row.len(), self.cols),
                ));
            }
        }
        Ok(CMatrix::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i][j];
            Complex64::new(re, im)
        }))
    }
}

fn read_json<T: for<'a> Deserialize<'a>>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| bad(what, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(what, format!("{}: {e}", path.display())))
}

pub fn load_tensor(path: &Path) -> Result<Tensor3> {
    read_json::<TensorFile>(path, "tensor file")?.to_tensor()
}

pub fn load_matrix(path: &Path) -> Result<CMatrix> {
    read_json::<MatrixFile>(path, "matrix file")?.to_matrix()
}

pub fn save_tensor(path: &Path, t: &Tensor3, name: Option<String>) -> Result<()> {
    let file = TensorFile::from_tensor(t, name);
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| bad("tensor file", e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| bad("tensor file", format!("{}: {e}", path.display())))
}

pub fn save_matrix(path: &Path, m: &CMatrix, name: Option<String>) -> Result<()> {
    let file = MatrixFile::from_matrix(m, name);
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| bad("matrix file", e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| bad("matrix file", format!("{}: {e}", path.display())))
}
