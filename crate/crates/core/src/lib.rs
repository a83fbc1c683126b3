//! Exact-arithmetic verification toolkit for finite-dimensional module
//! varieties.
//!
//! The crate models points of the variety of `d`-dimensional modules over a
//! finitely presented algebra as tuples of matrices, computes Hom spaces and
//! endomorphism algebras over exact scalars (arbitrary-precision rationals or
//! a prime field), and checks degeneration certificates
//! `0 -> Z -> Z (+) M -> N -> 0`, the codimension-one Hom identities, the
//! regularity criterion they certify, and the endomorphism-gap bound for
//! nonsplit self-extensions.  A companion set of modules handles the
//! exactness properties of modules and bimodules over the cusp ring
//! `k[m^2, m^3]`, and a brute-force oracle layer grounds the main
//! computations on independently checkable instances.
//!
//! No floating point is used anywhere; every verdict is decided by exact
//! rank computations.

pub mod algmod;
pub mod cusp;
pub mod degen;
pub mod exactfield;
pub mod oracles;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
