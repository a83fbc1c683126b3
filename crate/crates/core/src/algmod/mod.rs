//! Finitely presented algebras, module points, Hom spaces and
//! endomorphism algebras.
//!
//! A `d`-dimensional module over `k<X_1,...,X_t>/I` is a point: a `t`-tuple
//! of `d x d` matrices on which every relation of `I` vanishes.  Everything
//! downstream (degeneration certificates, regularity checks, the gap
//! theorem) consumes the operations defined here.

mod decomp;
mod endalg;
mod hom;
mod module_point;
mod presentation;

pub use decomp::{
    find_isomorphism, fitting_split, is_isomorphic, is_radical_hom, is_split_indecomposable,
    FittingSplit, IndecVerdict,
};
pub use endalg::{end_algebra, EndAlgebra};
pub use hom::{hom_basis, hom_dim, is_module_hom, orbit_dim, HomSpace};
pub use module_point::{ModulePoint, ValidationReport};
pub use presentation::{AlgebraPresentation, NcPoly};
