use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense row-major matrix with exact entries.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::OutOfRange("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { left: self.cols, right: other.rows });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        }))
    }

    /// `A ⊗ B` with the block convention `[b_ij A]`.
    pub fn kron(&self, b: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        Self::from_fn(ra * b.rows, ca * b.cols, |r, c| {
            let outer = b.get(r / ra, c / ca);
            if outer.is_zero() {
                S::zero()
            } else {
                outer.clone() * self.get(r % ra, c % ca).clone()
            }
        })
    }

    /// `M_1 ⊗ M_2 ⊗ ⋯ ⊗ M_k` under [`Matrix::kron`]; the identity `1×1` when empty.
    pub fn kron_chain(factors: &[Self]) -> Self {
        factors.iter().fold(Self::identity(1), |acc, m| acc.kron(m))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
