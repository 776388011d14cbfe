use std::fmt;

use super::{ChainError, Result};

/// Dense integer matrix, row-major, with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

pub(crate) fn ck_add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(ChainError::Overflow)
}

pub(crate) fn ck_mul(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y).ok_or(ChainError::Overflow)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows to read it from.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(ChainError::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(ChainError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if y != 0 {
                        let v = ck_add(out.get(i, j), ck_mul(x, y)?)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<IntMatrix> {
        let data = self.data.iter().map(|x| x.checked_neg().ok_or(ChainError::Overflow)).collect::<Result<_>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row_i += k * row_j`
    pub(crate) fn add_row(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = ck_add(self.get(i, c), ck_mul(k, self.get(j, c))?)?;
            self.set(i, c, v);
        }
        Ok(())
    }

    /// `col_i += k * col_j`
    pub(crate) fn add_col(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = ck_add(self.get(r, i), ck_mul(k, self.get(r, j))?)?;
            self.set(r, i, v);
        }
        Ok(())
    }

    pub(crate) fn neg_row(&mut self, i: usize) -> Result<()> {
        for c in 0..self.cols {
            let v = self.get(i, c).checked_neg().ok_or(ChainError::Overflow)?;
            self.set(i, c, v);
        }
        Ok(())
    }

    pub(crate) fn neg_col(&mut self, j: usize) -> Result<()> {
        for r in 0..self.rows {
            let v = self.get(r, j).checked_neg().ok_or(ChainError::Overflow)?;
            self.set(r, j, v);
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}
