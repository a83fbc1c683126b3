//! Gaussian elimination over exact fields.
//!
//! Pivoting is purely positional: for each column, the first row at or
//! below the current pivot row with a nonzero entry wins.  Together with
//! exact arithmetic this makes rank, nullspace bases and solutions
//! bit-reproducible across runs and platforms.

use crate::{Error, Result};

use super::Matrix;

impl Matrix {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field();
        let (m, n) = (self.rows(), self.cols());
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..n {
            if prow >= m {
                break;
            }
            let Some(hit) = (prow..m).find(|&r| !f.is_zero(a.at(r, col))) else {
                continue;
            };
            if hit != prow {
                for c in 0..n {
                    let x = a.at(hit, c).clone();
                    let y = a.at(prow, c).clone();
                    a.set(hit, c, y);
                    a.set(prow, c, x);
                }
            }
            let inv = f.inv(a.at(prow, col)).expect("pivot nonzero");
            for c in col..n {
                let v = f.mul(&inv, a.at(prow, c));
                a.set(prow, c, v);
            }
            for r in 0..m {
                if r == prow || f.is_zero(a.at(r, col)) {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in col..n {
                    let v = f.sub(a.at(r, c), &f.mul(&factor, a.at(prow, c)));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the kernel, one column vector per free column of
    /// the reduced echelon form, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<Matrix> {
        let f = self.field();
        let n = self.cols();
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = Matrix::zero(f, n, 1);
            v.set(free, 0, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                v.set(pc, 0, f.neg(rref.at(row, free)));
            }
            basis.push(v);
        }
        basis
    }

    /// The kernel basis assembled as the columns of a single matrix
    /// (`cols x nullity`).
    pub fn nullspace_matrix(&self) -> Matrix {
        let basis = self.nullspace();
        if basis.is_empty() {
            return Matrix::zero(self.field(), self.cols(), 0);
        }
        let refs: Vec<&Matrix> = basis.iter().collect();
        Matrix::hstack(&refs).expect("kernel vectors share height")
    }

    /// Solves `self * X = rhs` exactly.
    ///
    /// Returns `Ok(None)` when no solution exists.  When one does, the
    /// returned `X` is the canonical solution with every free variable set
    /// to zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        if self.rows() != rhs.rows() {
            return Err(Error::ShapeMismatch(format!(
                "solve {}x{} against rhs {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        let f = self.field();
        let n = self.cols();
        let k = rhs.cols();
        let aug = Matrix::hstack(&[self, rhs])?;
        let (red, pivots) = aug.rref();
        // A pivot falling in the right block marks an inconsistent system.
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zero(f, n, k);
        for (row, &pc) in pivots.iter().enumerate() {
            for c in 0..k {
                x.set(pc, c, red.at(row, n + c).clone());
            }
        }
        // Rows of the reduced system beyond the rank must be zero on the
        // right as well; pivots in the right block were caught above, but a
        // zero left block with nonzero right block in the same row is the
        // same inconsistency when n = 0.
        if n == 0 && !rhs.is_zero() {
            return Ok(None);
        }
        Ok(Some(x))
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field(), self.rows());
        match self.solve(&id) {
            Ok(Some(x)) => {
                if self.mul(&x).ok()? == id {
                    Some(x)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows()
    }

    /// Column span test: does `v` lie in the span of the columns of `self`?
    pub fn spans(&self, v: &Matrix) -> Result<bool> {
        Ok(self.solve(v)?.is_some())
    }
}
