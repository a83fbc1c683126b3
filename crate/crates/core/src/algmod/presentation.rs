use crate::exactfield::{FieldSpec, Matrix, Scalar};
use crate::{Error, Result};

/// A noncommutative polynomial in the generators `X_0, ..., X_{t-1}`:
/// a sum of terms `coeff * X_{w_1} X_{w_2} ... X_{w_k}`.  The empty word
/// denotes the identity of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl NcPoly {
    /// Evaluates the polynomial on a tuple of `dim x dim` matrices.
    pub fn evaluate(&self, mats: &[Matrix], field: FieldSpec, dim: usize) -> Result<Matrix> {
        let mut acc = Matrix::zero(field, dim, dim);
        for (coeff, word) in &self.terms {
            let mut prod = Matrix::identity(field, dim);
            for &g in word {
                prod = prod.mul(&mats[g])?;
            }
            acc = acc.add(&prod.scale(coeff))?;
        }
        Ok(acc)
    }
}

/// A finitely presented associative algebra `k<X_1,...,X_t>/I`, given by a
/// generator count and the relations spanning `I`.  An empty relation list
/// presents the free algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    field: FieldSpec,
    generators: usize,
    relations: Vec<NcPoly>,
}

impl AlgebraPresentation {
    pub fn new(field: FieldSpec, generators: usize, relations: Vec<NcPoly>) -> Result<Self> {
        for (ri, rel) in relations.iter().enumerate() {
            for (_, word) in &rel.terms {
                if let Some(&g) = word.iter().find(|&&g| g >= generators) {
                    return Err(Error::BadWord {
                        relation: ri,
                        index: g,
                        generators,
                    });
                }
            }
        }
        Ok(AlgebraPresentation {
            field,
            generators,
            relations,
        })
    }

    /// The free algebra on `t` generators.
    pub fn free(field: FieldSpec, generators: usize) -> Self {
        AlgebraPresentation {
            field,
            generators,
            relations: Vec::new(),
        }
    }

    /// The commutative algebra `k[x, y]/(x^2, y^2)` underlying the
    /// endomorphism-gap example; generators `0 = x`, `1 = y`.
    pub fn two_dual_numbers(field: FieldSpec) -> Self {
        let one = field.one();
        let minus = field.from_i64(-1);
        AlgebraPresentation {
            field,
            generators: 2,
            relations: vec![
                NcPoly {
                    terms: vec![(one.clone(), vec![0, 0])],
                },
                NcPoly {
                    terms: vec![(one.clone(), vec![1, 1])],
                },
                NcPoly {
                    terms: vec![(one, vec![0, 1]), (minus, vec![1, 0])],
                },
            ],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }
}
