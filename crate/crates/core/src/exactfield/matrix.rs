use std::fmt;

use crate::{Error, Result};

use super::{FieldSpec, Scalar};

/// Dense matrix over a [`FieldSpec`], entries stored row-major.
///
/// Matrices are immutable after construction; every operation returns a new
/// value.  Zero-row and zero-column shapes are first-class citizens: they
/// carry zero-dimensional modules through every construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged row lengths".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Small-integer constructor, the workhorse of tests and fixtures.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        Matrix::from_fn(field, rows.len(), c, |r, col| field.from_i64(rows[r][col]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| self.field.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| self.field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| self.field.mul(s, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.at(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("pow of non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.pow(self.rows.max(1))?.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn trace(&self) -> Scalar {
        debug_assert!(self.is_square());
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = self.field.add(&t, self.at(i, i));
        }
        t
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().expect("hstack of no matrices");
        let rows = first.rows;
        let field = first.field;
        if parts.iter().any(|m| m.rows != rows || m.field != field) {
            return Err(Error::ShapeMismatch("hstack with differing row counts".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.at(r, c).clone());
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().expect("vstack of no matrices");
        let cols = first.cols;
        let field = first.field;
        if parts.iter().any(|m| m.cols != cols || m.field != field) {
            return Err(Error::ShapeMismatch("vstack with differing column counts".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..m.rows {
                for c in 0..cols {
                    out.set(off + r, c, m.at(r, c).clone());
                }
            }
            off += m.rows;
        }
        Ok(out)
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let field = parts.first().expect("block_diag of no matrices").field;
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(ro + r, co + c, m.at(r, c).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// The `rows x cols` window starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        debug_assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(self.field, rows, cols, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    pub fn column(&self, c: usize) -> Matrix {
        self.submatrix(0, c, self.rows, 1)
    }

    pub fn take_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, i| {
            self.at(r, cols[i]).clone()
        })
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        Matrix::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let a = self.at(r / other.rows, c / other.cols);
                let b = other.at(r % other.rows, c % other.cols);
                f.mul(a, b)
            },
        )
    }

    /// Row-major flattening into a column vector, the vectorization
    /// convention used by every linear system in the crate.
    pub fn flatten(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows * self.cols,
            cols: 1,
            entries: self.entries.clone(),
        }
    }

    /// Inverse of [`Matrix::flatten`]: reshapes an `rows*cols x 1` vector.
    pub fn unflatten(vec: &Matrix, rows: usize, cols: usize) -> Result<Matrix> {
        if vec.cols != 1 || vec.rows != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "unflatten {}x{} into {}x{}",
                vec.rows, vec.cols, rows, cols
            )));
        }
        Ok(Matrix {
            field: vec.field,
            rows,
            cols,
            entries: vec.entries.clone(),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn multiply_and_pow() {
        let j = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert!(j.pow(2).unwrap().is_zero());
        assert!(j.is_nilpotent().unwrap());
        let i = Matrix::identity(Q, 2);
        assert_eq!(i.mul(&j).unwrap(), j);
    }

    #[test]
    fn stacking() {
        let a = Matrix::from_i64(Q, &[&[1], &[2]]);
        let b = Matrix::from_i64(Q, &[&[3], &[4]]);
        let h = Matrix::hstack(&[&a, &b]).unwrap();
        assert_eq!(h, Matrix::from_i64(Q, &[&[1, 3], &[2, 4]]));
        let v = Matrix::vstack(&[&a, &b]).unwrap();
        assert_eq!(v.rows(), 4);
        let d = Matrix::block_diag(&[&a, &b]);
        assert_eq!(d, Matrix::from_i64(Q, &[&[1, 0], &[2, 0], &[0, 3], &[0, 4]]));
    }

    #[test]
    fn zero_dimensional_shapes() {
        let e = Matrix::zero(Q, 0, 3);
        assert!(e.is_zero());
        let f = Matrix::zero(Q, 3, 0);
        let p = f.mul(&e).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 3));
        assert!(p.is_zero());
        let d = Matrix::block_diag(&[&Matrix::identity(Q, 2), &Matrix::zero(Q, 0, 0)]);
        assert_eq!(d, Matrix::identity(Q, 2));
    }

    #[test]
    fn flatten_roundtrip() {
        let a = Matrix::from_i64(Q, &[&[1, 2, 3], &[4, 5, 6]]);
        let v = a.flatten();
        assert_eq!(Matrix::unflatten(&v, 2, 3).unwrap(), a);
    }
}
