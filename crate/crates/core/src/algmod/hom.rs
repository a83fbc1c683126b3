//! Hom-space computation.
//!
//! `Hom_A(M, N)` is the kernel of the vectorized commutation system
//! `phi * M_i - N_i * phi = 0`, one block of equations per generator.
//! Relations never need to be imposed on `phi`: both endpoints already
//! satisfy them, so commuting with the generators is sufficient.

use crate::exactfield::Matrix;
use crate::{Error, Result};

use super::ModulePoint;

/// A basis of `Hom_A(source, target)`, canonical in the reduced-echelon
/// ordering of the underlying kernel computation.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: ModulePoint,
    target: ModulePoint,
    basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn source(&self) -> &ModulePoint {
        &self.source
    }

    pub fn target(&self) -> &ModulePoint {
        &self.target
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Assembles the element with the given coordinates.
    pub fn element(&self, coords: &[crate::exactfield::Scalar]) -> Matrix {
        debug_assert_eq!(coords.len(), self.basis.len());
        let field = self.source.field();
        let mut acc = Matrix::zero(field, self.target.dim(), self.source.dim());
        for (c, b) in coords.iter().zip(&self.basis) {
            if !field.is_zero(c) {
                acc = acc.add(&b.scale(c)).expect("basis shapes agree");
            }
        }
        acc
    }
}

/// Is `f` an `A`-module homomorphism `src -> tgt`?
pub fn is_module_hom(f: &Matrix, src: &ModulePoint, tgt: &ModulePoint) -> Result<bool> {
    if !src.same_algebra(tgt) {
        return Err(Error::AlgebraMismatch);
    }
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        return Ok(false);
    }
    for (ms, mt) in src.mats().iter().zip(tgt.mats()) {
        if f.mul(ms)? != mt.mul(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes the canonical basis of `Hom_A(m, n)`.
pub fn hom_basis(m: &ModulePoint, n: &ModulePoint) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let t = m.mats().len();
    let unknowns = dn * dm;
    let mut system = Matrix::zero(field, t * unknowns, unknowns);
    for (i, (mm, nm)) in m.mats().iter().zip(n.mats()).enumerate() {
        for a in 0..dn {
            for b in 0..dm {
                let row = i * unknowns + a * dm + b;
                // (phi * M_i)(a, b) contributes M_i(k, b) at phi(a, k).
                for k in 0..dm {
                    let col = a * dm + k;
                    let v = field.add(system.at(row, col), mm.at(k, b));
                    system.set(row, col, v);
                }
                // -(N_i * phi)(a, b) contributes -N_i(a, k) at phi(k, b).
                for k in 0..dn {
                    let col = k * dm + b;
                    let v = field.sub(system.at(row, col), nm.at(a, k));
                    system.set(row, col, v);
                }
            }
        }
    }
    let basis = system
        .nullspace()
        .iter()
        .map(|v| Matrix::unflatten(v, dn, dm))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

/// `[M, N] = dim_k Hom_A(M, N)`.
pub fn hom_dim(m: &ModulePoint, n: &ModulePoint) -> Result<usize> {
    Ok(hom_basis(m, n)?.dim())
}

/// `dim O_M = d^2 - [M, M]`.
pub fn orbit_dim(m: &ModulePoint) -> Result<usize> {
    Ok(m.dim() * m.dim() - hom_dim(m, m)?)
}
