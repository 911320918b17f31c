use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns. Each column holds its nonzero
/// entries sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::invalid("ragged dense matrix"));
        }
        let mut m = IntegerMatrix::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let v: BigInt = v.clone().into();
                if !v.is_zero() {
                    m.columns[c].push((r as u32, v));
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from columns of `(row, value)` pairs; duplicate rows
    /// are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, BigInt)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for col in columns {
            let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
            for (r, v) in col {
                if r as usize >= rows {
                    return Err(Error::invalid(format!(
                        "row {r} out of range for {rows} rows"
                    )));
                }
                *acc.entry(r).or_default() += v;
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            columns: out,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, BigInt)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.columns
            .iter()
            .flatten()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize][c] = v.clone();
            }
        }
        out
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
                for (k, b) in rcol {
                    for (r, a) in &self.columns[*k as usize] {
                        *acc.entry(*r).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }
}

/// The boundary `∂_d = Σ_i (−1)^i d_i` from `d`-chains to `(d−1)`-chains.
///
/// Rows are `(d−1)`-simplices, columns `d`-simplices. Entries are signed
/// multiplicities since a quotient simplex may hit one face several times.
pub fn boundary_matrix(c: &DeltaComplex, d: usize) -> Result<IntegerMatrix> {
    let top = c.dim().unwrap_or(0);
    if d == 0 || d > top {
        return Err(Error::invalid(format!(
            "boundary dimension {d} is outside 1..={top}"
        )));
    }
    let columns = (0..c.num_simplices(d))
        .map(|s| {
            c.faces_of(d, s)
                .iter()
                .enumerate()
                .map(|(i, &f)| (f, BigInt::from(if i % 2 == 0 { 1 } else { -1 })))
                .collect()
        })
        .collect();
    IntegerMatrix::from_columns(c.num_simplices(d - 1), columns)
}
