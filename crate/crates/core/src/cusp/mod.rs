//! Modules and bimodules over the cusp ring `k[m^2, m^3]`.
//!
//! A finite-dimensional module is a pair of commuting action matrices
//! `A` (for `m^2`) and `B` (for `m^3`) with `A^3 = B^2`; `m^4` is always
//! realized as `A^2`, never stored.  The exactness properties P1, P1' and
//! P2 reduce to rank identities at finite dimension, which is how they are
//! checked here.

mod bimodule;
mod module;

pub use bimodule::{
    check_long_n, check_p2, endo_bimodule, two_of_three, CuspBimodule, LongReport,
    TwoOfThreeReport,
};
pub use module::{check_p1, check_p1_prime, xi_operator, CuspModule, Side};
