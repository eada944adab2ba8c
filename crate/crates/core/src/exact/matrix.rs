use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactScalar, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[&Vector]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, |v| v.dim());
        if let Some(bad) = columns.iter().find(|v| v.dim() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: bad.dim(),
            });
        }
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in columns {
                entries.push(col[i].clone());
            }
        }
        Matrix::new(r, c, entries)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ExactScalar::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![ExactScalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ExactScalar::one();
        }
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactScalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vector(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.dim(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Exact determinant.
    ///
    /// Each row is scaled by the lcm of its denominators, the resulting integer
    /// matrix goes through fraction-free elimination, and the row scalings are
    /// divided back out at the end.
    pub fn det(&self) -> Result<ExactScalar> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut ints = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            ints.push(
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect::<Vec<_>>(),
            );
            scale *= lcm;
        }
        let d = det_integer(ints);
        Ok(ExactScalar::new(d, scale).expect("nonzero scale"))
    }
}

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every division is exact, so intermediate entries stay bounded by the
/// minors of the input (Hadamard-sized), never by products of pivots.
pub fn det_integer(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
