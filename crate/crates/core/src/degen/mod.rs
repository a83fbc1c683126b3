//! Exact sequences, degeneration certificates and the regularity checks
//! they support.
//!
//! The central object is a certificate `0 -> Z -> Z (+) M -> N -> 0`
//! witnessing that `N` lies in the orbit closure of `M`.  Operations here
//! verify exactness, decide splitness three independent ways, normalize
//! certificates to radical form, check the codimension-one Hom identities,
//! and certify regularity; the self-extension variant carries the
//! endomorphism-gap theorem.

mod certificate;
mod selfext;
mod sequence;

pub use certificate::{
    certificate_from_submodule, certify_regularity, codim1_identities, normalize_certificate,
    uniqueness_check, Codim1Report, DegenerationCertificate, DualWitness, RegularityReport,
    RegularityStatus, UniquenessReport,
};
pub use selfext::{endo_pair, theorem2_gap, GapReport, GapStatus, SelfExtensionDatum};
pub use sequence::{check_exact, check_split, factors_left, ExactReport, ShortExactCandidate};
