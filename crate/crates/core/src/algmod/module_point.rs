use std::sync::Arc;

use crate::exactfield::{FieldSpec, Matrix};
use crate::{Error, Result};

use super::AlgebraPresentation;

/// A point of the module variety: `t` matrices of size `d x d`, one per
/// generator, on which every relation vanishes.
///
/// Construction checks shapes only; relation membership is the business of
/// [`ModulePoint::validate`], so that deliberately broken points can be fed
/// to the validator.  `d = 0` is the zero module (all matrices empty).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePoint {
    algebra: Arc<AlgebraPresentation>,
    dim: usize,
    mats: Vec<Matrix>,
}

/// Outcome of checking the defining relations on a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub pass: bool,
    pub first_failing_relation: Option<usize>,
}

impl ModulePoint {
    pub fn new(algebra: Arc<AlgebraPresentation>, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != algebra.generators() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} generators",
                mats.len(),
                algebra.generators()
            )));
        }
        for m in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "generator matrix {}x{} in a dimension-{} point",
                    m.rows(),
                    m.cols(),
                    dim
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ModulePoint { algebra, dim, mats })
    }

    pub fn zero_module(algebra: Arc<AlgebraPresentation>) -> Self {
        let t = algebra.generators();
        let field = algebra.field();
        ModulePoint {
            algebra,
            dim: 0,
            mats: vec![Matrix::zero(field, 0, 0); t],
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn same_algebra(&self, other: &ModulePoint) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    /// Checks that every relation evaluates to the zero matrix, reporting
    /// the first one that does not.
    pub fn validate(&self) -> Result<ValidationReport> {
        for (i, rel) in self.algebra.relations().iter().enumerate() {
            if !rel.evaluate(&self.mats, self.field(), self.dim)?.is_zero() {
                return Ok(ValidationReport {
                    pass: false,
                    first_failing_relation: Some(i),
                });
            }
        }
        Ok(ValidationReport {
            pass: true,
            first_failing_relation: None,
        })
    }

    /// Block-diagonal direct sum; dimension adds.
    pub fn direct_sum(&self, other: &ModulePoint) -> Result<ModulePoint> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(ModulePoint {
            algebra: Arc::clone(&self.algebra),
            dim: self.dim + other.dim,
            mats,
        })
    }

    /// The conjugated point `g * m = (g m_1 g^-1, ..., g m_t g^-1)`.
    pub fn conjugate(&self, g: &Matrix) -> Result<ModulePoint> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "conjugating a dimension-{} point by {}x{}",
                self.dim,
                g.rows(),
                g.cols()
            )));
        }
        let gi = g
            .inverse()
            .ok_or_else(|| Error::Precondition("conjugating matrix is singular".into()))?;
        let mats = self
            .mats
            .iter()
            .map(|m| g.mul(m).and_then(|gm| gm.mul(&gi)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModulePoint {
            algebra: Arc::clone(&self.algebra),
            dim: self.dim,
            mats,
        })
    }

    /// Restricts the point to an invariant subspace with the given basis
    /// (columns, full column rank).  Errors with the offending generator if
    /// the subspace is not invariant.
    pub fn restrict(&self, basis: &Matrix) -> Result<ModulePoint> {
        if basis.rows() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "subspace basis with {} rows in a dimension-{} point",
                basis.rows(),
                self.dim
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::Precondition("subspace basis is not independent".into()));
        }
        let mut mats = Vec::with_capacity(self.mats.len());
        for (g, m) in self.mats.iter().enumerate() {
            let image = m.mul(basis)?;
            let coords = basis
                .solve(&image)?
                .ok_or(Error::NotInvariant { generator: g })?;
            mats.push(coords);
        }
        Ok(ModulePoint {
            algebra: Arc::clone(&self.algebra),
            dim: basis.cols(),
            mats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn validate_dual_numbers_point() {
        let alg = Arc::new(AlgebraPresentation::two_dual_numbers(Q));
        // alpha = beta = the 2x2 nilpotent Jordan block commutes with
        // itself and squares to zero.
        let j = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let m = ModulePoint::new(Arc::clone(&alg), 2, vec![j.clone(), j]).unwrap();
        assert!(m.validate().unwrap().pass);

        // The identity breaks the first relation alpha^2 = 0.
        let bad = ModulePoint::new(
            Arc::clone(&alg),
            2,
            vec![Matrix::identity(Q, 2), Matrix::zero(Q, 2, 2)],
        )
        .unwrap();
        let report = bad.validate().unwrap();
        assert!(!report.pass);
        assert_eq!(report.first_failing_relation, Some(0));
    }

    #[test]
    fn free_algebra_accepts_anything() {
        let alg = Arc::new(AlgebraPresentation::free(Q, 2));
        let m = ModulePoint::new(
            alg,
            2,
            vec![
                Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]),
                Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap();
        assert!(m.validate().unwrap().pass);
    }

    #[test]
    fn direct_sum_dims_add() {
        let alg = Arc::new(AlgebraPresentation::free(Q, 1));
        let a = ModulePoint::new(Arc::clone(&alg), 1, vec![Matrix::zero(Q, 1, 1)]).unwrap();
        let z = ModulePoint::zero_module(Arc::clone(&alg));
        let s = a.direct_sum(&z).unwrap();
        assert_eq!(s.dim(), 1);
        // Summing with the zero module returns the same matrices.
        assert_eq!(s.mats(), a.mats());
    }

    #[test]
    fn restrict_rejects_non_invariant_subspace() {
        let alg = Arc::new(AlgebraPresentation::free(Q, 1));
        let j = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let m = ModulePoint::new(alg, 2, vec![j]).unwrap();
        // span(e1) is invariant, span(e2) is not.
        let good = Matrix::from_i64(Q, &[&[1], &[0]]);
        assert!(m.restrict(&good).is_ok());
        let bad = Matrix::from_i64(Q, &[&[0], &[1]]);
        match m.restrict(&bad) {
            Err(Error::NotInvariant { generator: 0 }) => {}
            other => panic!("expected NotInvariant, got {other:?}"),
        }
    }
}
