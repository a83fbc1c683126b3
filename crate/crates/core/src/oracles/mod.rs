//! Independent brute-force verifiers and bounded instance searches.
//!
//! Nothing here shares a code path with the operations being checked: the
//! partition formula grounds the Hom computation on nilpotent single-matrix
//! modules, and the finite-field search hunts for nonsplit self-extension
//! data entirely by enumeration.

mod partition;
mod search;

pub use partition::{jordan_module, partition_hom, Partition};
pub use search::{screen_datum, search_thm2, Screening, SearchOutcome, SearchParams};
