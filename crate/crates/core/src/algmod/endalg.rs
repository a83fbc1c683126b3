//! Endomorphism algebras with structure constants and Jacobson radical.
//!
//! The radical is the kernel of the trace form of the left-regular
//! representation, `x |-> (y |-> tr L_{xy})`.  That criterion is valid in
//! characteristic zero only, so this module insists on the rational field;
//! prime fields keep their rank and dimension operations but get no radical.

use crate::exactfield::{Matrix, Scalar};
use crate::{Error, Result};

use super::{hom_basis, ModulePoint};

/// `End_A(M)` with multiplication table and radical.
///
/// Coordinates are always taken with respect to `basis`, the canonical Hom
/// basis of `(M, M)`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    module: ModulePoint,
    basis: Vec<Matrix>,
    /// `sc[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    sc: Vec<Vec<Vec<Scalar>>>,
    identity_coords: Vec<Scalar>,
    /// Rows spanning the radical, in reduced echelon form.
    radical_rows: Matrix,
    radical_pivots: Vec<usize>,
}

pub fn end_algebra(m: &ModulePoint) -> Result<EndAlgebra> {
    let field = m.field();
    if !field.is_rational() {
        return Err(Error::UnsupportedField("endAlgebra"));
    }
    let hom = hom_basis(m, m)?;
    let basis: Vec<Matrix> = hom.basis().to_vec();
    let n = basis.len();
    let d = m.dim();

    if n == 0 {
        // The zero module: an empty algebra.
        return Ok(EndAlgebra {
            module: m.clone(),
            basis,
            sc: Vec::new(),
            identity_coords: Vec::new(),
            radical_rows: Matrix::zero(field, 0, 0),
            radical_pivots: Vec::new(),
        });
    }

    // One multi-RHS solve expresses all n^2 products and the identity in
    // the basis at once.
    let flat: Vec<Matrix> = basis.iter().map(Matrix::flatten).collect();
    let cols: Vec<&Matrix> = flat.iter().collect();
    let b = Matrix::hstack(&cols)?;
    let mut rhs_cols: Vec<Matrix> = Vec::with_capacity(n * n + 1);
    for ei in &basis {
        for ej in &basis {
            rhs_cols.push(ei.mul(ej)?.flatten());
        }
    }
    rhs_cols.push(Matrix::identity(field, d).flatten());
    let rhs_refs: Vec<&Matrix> = rhs_cols.iter().collect();
    let rhs = Matrix::hstack(&rhs_refs)?;
    let x = b
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("products of endomorphisms left the algebra".into()))?;

    let mut sc = vec![vec![vec![field.zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sc[i][j][k] = x.at(k, i * n + j).clone();
            }
        }
    }
    let identity_coords: Vec<Scalar> = (0..n).map(|k| x.at(k, n * n).clone()).collect();

    // Trace of left multiplication by each basis element, then the Gram
    // matrix of the Dickson trace form.
    let mut tau = vec![field.zero(); n];
    for m_idx in 0..n {
        let mut t = field.zero();
        for k in 0..n {
            t = field.add(&t, &sc[m_idx][k][k]);
        }
        tau[m_idx] = t;
    }
    let gram = Matrix::from_fn(field, n, n, |i, j| {
        let mut g = field.zero();
        for (m_idx, tm) in tau.iter().enumerate() {
            g = field.add(&g, &field.mul(&sc[i][j][m_idx], tm));
        }
        g
    });
    let radical_cols = gram.nullspace_matrix();
    let (radical_rows, radical_pivots) = radical_cols.transpose().rref();

    Ok(EndAlgebra {
        module: m.clone(),
        basis,
        sc,
        identity_coords,
        radical_rows,
        radical_pivots,
    })
}

impl EndAlgebra {
    pub fn module(&self) -> &ModulePoint {
        &self.module
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_rows.rows()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    pub fn identity_coords(&self) -> &[Scalar] {
        &self.identity_coords
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.sc[i][j][k]
    }

    /// The radical as coordinate vectors with respect to the basis.
    pub fn radical_coords(&self) -> Vec<Vec<Scalar>> {
        (0..self.radical_rows.rows())
            .map(|r| {
                (0..self.dim())
                    .map(|c| self.radical_rows.at(r, c).clone())
                    .collect()
            })
            .collect()
    }

    /// The radical basis materialized as endomorphism matrices.
    pub fn radical_matrices(&self) -> Vec<Matrix> {
        self.radical_coords()
            .iter()
            .map(|coords| self.element(coords))
            .collect()
    }

    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        let field = self.module.field();
        let d = self.module.dim();
        let mut acc = Matrix::zero(field, d, d);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !field.is_zero(c) {
                acc = acc.add(&b.scale(c)).expect("shapes agree");
            }
        }
        acc
    }

    /// Coordinates of an endomorphism matrix, if it lies in the algebra.
    pub fn coords_of(&self, e: &Matrix) -> Result<Option<Vec<Scalar>>> {
        if self.basis.is_empty() {
            return Ok(if e.is_zero() { Some(Vec::new()) } else { None });
        }
        let flat: Vec<Matrix> = self.basis.iter().map(Matrix::flatten).collect();
        let cols: Vec<&Matrix> = flat.iter().collect();
        let b = Matrix::hstack(&cols)?;
        Ok(b
            .solve(&e.flatten())?
            .map(|x| (0..self.dim()).map(|k| x.at(k, 0).clone()).collect()))
    }

    /// Coordinate-level product via the structure constants.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let field = self.module.field();
        let n = self.dim();
        let mut out = vec![field.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if field.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if field.is_zero(bj) {
                    continue;
                }
                let prod = field.mul(ai, bj);
                for (k, out_k) in out.iter_mut().enumerate() {
                    *out_k = field.add(out_k, &field.mul(&prod, &self.sc[i][j][k]));
                }
            }
        }
        out
    }

    /// Reduces a coordinate vector modulo the radical (in place on a copy).
    /// The result is supported on the non-pivot coordinates.
    pub fn reduce_mod_radical(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.module.field();
        let mut v = coords.to_vec();
        for (row, &pc) in self.radical_pivots.iter().enumerate() {
            if field.is_zero(&v[pc]) {
                continue;
            }
            let factor = v[pc].clone();
            for c in 0..self.dim() {
                let adj = field.mul(&factor, self.radical_rows.at(row, c));
                v[c] = field.sub(&v[c], &adj);
            }
        }
        v
    }

    pub fn contains_in_radical(&self, coords: &[Scalar]) -> bool {
        let field = self.module.field();
        self.reduce_mod_radical(coords)
            .iter()
            .all(|s| field.is_zero(s))
    }

    /// Coordinate indices spanning a complement of the radical.
    pub fn semisimple_support(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|c| self.radical_pivots.binary_search(c).is_err())
            .collect()
    }
}
