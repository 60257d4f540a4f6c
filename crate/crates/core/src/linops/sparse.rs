use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::LinearOperator;
use crate::error::{Error, Result};

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triplets. Duplicates are summed and
    /// explicit zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        for &(i, j, _) in &triplets {
            if i >= rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: rows,
                });
            }
            if j >= cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: cols,
                });
            }
        }
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0; rows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *values.last_mut().expect("previous entry") += v;
            } else {
                indices.push(j);
                values.push(v);
                indptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..rows {
            indptr[i + 1] += indptr[i];
        }
        let mut m = Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        };
        m.drop_zeros();
        Ok(m)
    }

    fn drop_zeros(&mut self) {
        if self.values.iter().all(|&v| v != 0.0) {
            return;
        }
        let mut indptr = vec![0; self.rows + 1];
        let mut indices = Vec::with_capacity(self.indices.len());
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.rows {
            for k in self.indptr[i]..self.indptr[i + 1] {
                if self.values[k] != 0.0 {
                    indices.push(self.indices[k]);
                    values.push(self.values[k]);
                }
            }
            indptr[i + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nonzeros of row `i` as `(column, value)` pairs.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.indptr[i]..self.indptr[i + 1];
        self.indices[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        (0..self.rows)
            .flat_map(|i| self.row_entries(i).map(move |(j, v)| (i, j, v)))
            .collect()
    }

    /// Coordinate / real / general Matrix Market text, 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::with_capacity(32 * self.nnz() + 64);
        s.push_str("%%MatrixMarket matrix coordinate real general\n");
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.nnz());
        for (i, j, v) in self.triplets() {
            let _ = writeln!(s, "{} {} {:e}", i + 1, j + 1, v);
        }
        s
    }

    pub fn write_matrix_market(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(self.to_matrix_market().as_bytes())
            .map_err(|e| Error::io(path, e))
    }

    pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut text = String::new();
        for line in BufReader::new(f).lines() {
            text.push_str(&line.map_err(|e| Error::io(path, e))?);
            text.push('\n');
        }
        Self::parse_matrix_market(&text)
    }

    pub fn parse_matrix_market(text: &str) -> Result<Self> {
        let parse_err = |message: String| Error::Parse {
            context: "matrix market".into(),
            message,
        };
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err("empty input".into()))?;
        let banner: Vec<String> = header
            .split_whitespace()
            .map(str::to_ascii_lowercase)
            .collect();
        if banner.len() < 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix" {
            return Err(parse_err(format!("bad banner `{header}`")));
        }
        if banner[2] != "coordinate" || banner[3] != "real" || banner[4] != "general" {
            return Err(parse_err(format!(
                "only `coordinate real general` is supported, got `{}`",
                banner[2..5].join(" ")
            )));
        }
        let mut data = lines.filter(|l| !l.trim_start().starts_with('%') && !l.trim().is_empty());
        let size = data
            .next()
            .ok_or_else(|| parse_err("missing size line".into()))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(format!("bad size token `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(parse_err(format!("bad size line `{size}`")));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in data {
            let mut it = line.split_whitespace();
            let (Some(i), Some(j), Some(v)) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err(format!("bad entry `{line}`")));
            };
            let i: usize = i.parse().map_err(|_| parse_err(format!("bad row `{i}`")))?;
            let j: usize = j
                .parse()
                .map_err(|_| parse_err(format!("bad column `{j}`")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| parse_err(format!("bad value `{v}`")))?;
            if i == 0 || j == 0 {
                return Err(parse_err("indices are 1-based".into()));
            }
            triplets.push((i - 1, j - 1, v));
        }
        if triplets.len() != nnz {
            return Err(parse_err(format!(
                "expected {nnz} entries, found {}",
                triplets.len()
            )));
        }
        Self::from_triplets(rows, cols, triplets)
    }
}

impl LinearOperator for SparseMatrix {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.indptr[i]..self.indptr[i + 1] {
                acc += self.values[k] * x[self.indices[k]];
            }
            *yi = acc;
        }
    }

    fn apply_adjoint_into(&self, y: &[f64], x: &mut [f64]) {
        x.iter_mut().for_each(|v| *v = 0.0);
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            for k in self.indptr[i]..self.indptr[i + 1] {
                x[self.indices[k]] += self.values[k] * yi;
            }
        }
    }

    fn row(&self, i: usize) -> Option<Vec<f64>> {
        if i >= self.rows {
            return None;
        }
        let mut r = vec![0.0; self.cols];
        for (j, v) in self.row_entries(i) {
            r[j] = v;
        }
        Some(r)
    }
}
