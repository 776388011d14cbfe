//! Smith normal form over the integers by elimination.
//!
//! Alongside the diagonal form `D = P M Q` the routine keeps the inverses of
//! both transforms, so `M = P^-1 D Q^-1` can be checked exactly.

use super::matrix::IntMatrix;
use super::{ChainError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive.
    pub invariant_factors: Vec<i64>,
    pub rank: usize,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

fn neg_quotient(v: i64, pivot: i64) -> Result<i64> {
    v.checked_div(pivot).and_then(i64::checked_neg).ok_or(ChainError::Overflow)
}

struct Calc {
    m: IntMatrix,
    p: IntMatrix,
    pinv: IntMatrix,
    q: IntMatrix,
    qinv: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.pinv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.qinv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        let neg = k.checked_neg().ok_or(ChainError::Overflow)?;
        self.m.add_row(i, j, k)?;
        self.p.add_row(i, j, k)?;
        self.pinv.add_col(j, i, neg)
    }

    fn add_col(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        let neg = k.checked_neg().ok_or(ChainError::Overflow)?;
        self.m.add_col(i, j, k)?;
        self.q.add_col(i, j, k)?;
        self.qinv.add_row(j, i, neg)
    }

    fn neg_row(&mut self, i: usize) -> Result<()> {
        self.m.neg_row(i)?;
        self.p.neg_row(i)?;
        self.pinv.neg_col(i)
    }

    /// Smallest nonzero |entry| in the lower-right block starting at `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let v = self.m.get(i, j).unsigned_abs();
                if v != 0 && best.is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero entry in row `t` or column `t` (from `t` on).
    fn min_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, u64)> = None;
        let mut consider = |i: usize, j: usize, v: i64| {
            let a = v.unsigned_abs();
            if a != 0 && best.is_none_or(|b| a < b.2) {
                best = Some((i, j, a));
            }
        };
        for i in t..self.m.rows() {
            consider(i, t, self.m.get(i, t));
        }
        for j in t..self.m.cols() {
            consider(t, j, self.m.get(t, j));
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn place(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn process(&mut self) -> Result<()> {
        let (rows, cols) = self.m.shape();
        for t in 0..rows.min(cols) {
            let Some(pos) = self.min_pivot(t) else { break };
            self.place(t, pos);
            loop {
                let pivot = self.m.get(t, t);
                let mut dirty = false;
                for i in t + 1..rows {
                    let v = self.m.get(i, t);
                    if v != 0 {
                        self.add_row(i, t, neg_quotient(v, pivot)?)?;
                        dirty |= self.m.get(i, t) != 0;
                    }
                }
                for j in t + 1..cols {
                    let v = self.m.get(t, j);
                    if v != 0 {
                        self.add_col(j, t, neg_quotient(v, pivot)?)?;
                        dirty |= self.m.get(t, j) != 0;
                    }
                }
                if dirty {
                    let pos = self.min_cross(t).expect("pivot row or column is nonzero");
                    self.place(t, pos);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| self.m.get(i, j) % pivot != 0));
                match offender {
                    Some(i) => self.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if self.m.get(t, t) < 0 {
                self.neg_row(t)?;
            }
        }
        Ok(())
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm> {
    let (rows, cols) = m.shape();
    let mut calc = Calc {
        m: m.clone(),
        p: IntMatrix::identity(rows),
        pinv: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        qinv: IntMatrix::identity(cols),
    };
    calc.process()?;
    let invariant_factors: Vec<i64> = (0..rows.min(cols)).map(|i| calc.m.get(i, i)).take_while(|&d| d != 0).collect();
    Ok(SmithNormalForm {
        rank: invariant_factors.len(),
        invariant_factors,
        diagonal: calc.m,
        left: calc.p,
        left_inv: calc.pinv,
        right: calc.q,
        right_inv: calc.qinv,
    })
}

impl SmithNormalForm {
    /// Confirms `P M Q = D`, `P^-1 D Q^-1 = M`, both transforms invertible
    /// over the integers, and the divisibility chain.
    pub fn verify(&self, original: &IntMatrix) -> Result<bool> {
        let (rows, cols) = original.shape();
        let forward = self.left.mul(original)?.mul(&self.right)? == self.diagonal;
        let back = self.left_inv.mul(&self.diagonal)?.mul(&self.right_inv)? == *original;
        let unimodular = self.left.mul(&self.left_inv)? == IntMatrix::identity(rows)
            && self.right.mul(&self.right_inv)? == IntMatrix::identity(cols);
        let diag = IntMatrix::diagonal(rows, cols, &self.invariant_factors) == self.diagonal;
        let chain = self.invariant_factors.iter().all(|&d| d > 0)
            && self.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        Ok(forward && back && unimodular && diag && chain)
    }
}
