use crate::exactfield::{FieldSpec, Matrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional (left or right) module over `k[m^2, m^3]`: action
/// matrices `A` of `m^2` and `B` of `m^3` with `AB = BA` and `A^3 = B^2`.
/// Both sides carry the same data because the ring is commutative; the
/// side tag only selects which property (P1 or P1') applies.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspModule {
    dim: usize,
    a: Matrix,
    b: Matrix,
    side: Side,
}

impl CuspModule {
    pub fn new(a: Matrix, b: Matrix, side: Side) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::ShapeMismatch(format!(
                "cusp actions {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if a.mul(&b)? != b.mul(&a)? {
            return Err(Error::InvalidCusp("actions of m^2 and m^3 do not commute".into()));
        }
        if a.pow(3)? != b.pow(2)? {
            return Err(Error::InvalidCusp("A^3 differs from B^2".into()));
        }
        Ok(CuspModule {
            dim: a.rows(),
            a,
            b,
            side,
        })
    }

    /// Restriction of a `k[m]`-module along the inclusion: `A = C^2`,
    /// `B = C^3` for any square matrix `C`.
    pub fn from_nilpotent(c: &Matrix, side: Side) -> Result<Self> {
        CuspModule::new(c.pow(2)?, c.pow(3)?, side)
    }

    /// The quotient of the cusp ring by the principal ideal generated by
    /// `m^a` (for `a >= 2`): basis the monomials `m^e` surviving the
    /// quotient, actions by exponent shift.
    pub fn truncation(a: usize, field: FieldSpec, side: Side) -> Self {
        assert!(a >= 2, "m^a with a >= 2 generates a proper ideal");
        let in_ring = |e: usize| e == 0 || e >= 2;
        let in_ideal = |e: usize| e == a || e >= a + 2;
        let exponents: Vec<usize> = (0..a + 2).filter(|&e| in_ring(e) && !in_ideal(e)).collect();
        let dim = exponents.len();
        let index_of = |e: usize| exponents.iter().position(|&x| x == e);
        let action = |k: usize| {
            let mut mat = Matrix::zero(field, dim, dim);
            for (j, &e) in exponents.iter().enumerate() {
                let target = e + k;
                if !in_ideal(target) {
                    if let Some(i) = index_of(target) {
                        mat.set(i, j, field.one());
                    }
                }
            }
            mat
        };
        CuspModule {
            dim,
            a: action(2),
            b: action(3),
            side,
        }
    }

    /// The simple module `R / (m^2, m^3)`: one-dimensional, both actions
    /// zero.
    pub fn simple(field: FieldSpec, side: Side) -> Self {
        CuspModule {
            dim: 1,
            a: Matrix::zero(field, 1, 1),
            b: Matrix::zero(field, 1, 1),
            side,
        }
    }

    pub fn zero(field: FieldSpec, side: Side) -> Self {
        CuspModule {
            dim: 0,
            a: Matrix::zero(field, 0, 0),
            b: Matrix::zero(field, 0, 0),
            side,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_m2(&self) -> &Matrix {
        &self.a
    }

    pub fn action_m3(&self) -> &Matrix {
        &self.b
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn direct_sum(&self, other: &CuspModule) -> Result<CuspModule> {
        if self.side != other.side {
            return Err(Error::ShapeMismatch("direct sum across sides".into()));
        }
        CuspModule::new(
            Matrix::block_diag(&[&self.a, &other.a]),
            Matrix::block_diag(&[&self.b, &other.b]),
            self.side,
        )
    }

    pub fn conjugate(&self, g: &Matrix) -> Result<CuspModule> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::Precondition("conjugating matrix is singular".into()))?;
        CuspModule::new(
            g.mul(&self.a)?.mul(&gi)?,
            g.mul(&self.b)?.mul(&gi)?,
            self.side,
        )
    }

    /// Transpose duality: swaps sides.
    pub fn transpose(&self) -> CuspModule {
        CuspModule {
            dim: self.dim,
            a: self.a.transpose(),
            b: self.b.transpose(),
            side: match self.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
        }
    }
}

/// The block operator `[[B, -A], [A^2, -B]]` on `M (+) M`; squares to zero
/// because `A^3 = B^2` and the actions commute.
pub fn xi_operator(m: &CuspModule) -> Matrix {
    let a2 = m.a.pow(2).expect("square action");
    let top = Matrix::hstack(&[&m.b, &m.a.neg()]).expect("shapes agree");
    let bottom = Matrix::hstack(&[&a2, &m.b.neg()]).expect("shapes agree");
    Matrix::vstack(&[&top, &bottom]).expect("shapes agree")
}

/// Property P1 for a left module: the two-step sequence built from the
/// block operator is exact, equivalently `rank Xi = dim M` (image equals
/// kernel once `Xi^2 = 0`).  Equivalently `M (+) M` is free over the dual
/// numbers acting through `Xi`.
pub fn check_p1(m: &CuspModule) -> Result<bool> {
    if m.side != Side::Left {
        return Err(Error::Precondition("checkP1 expects a left module".into()));
    }
    Ok(xi_operator(m).rank() == m.dim)
}

/// Property P1' for a right module: the mirrored operator acts on row
/// pairs; its rank condition coincides with the left one on the same
/// action matrices.
pub fn check_p1_prime(m: &CuspModule) -> Result<bool> {
    if m.side != Side::Right {
        return Err(Error::Precondition("checkP1' expects a right module".into()));
    }
    Ok(xi_operator(m).rank() == m.dim)
}
