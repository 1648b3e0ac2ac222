//! Interleavings at the module, homotopy and derived levels.
//!
//! An ε-interleaving between `M` and `N` is a pair `f: M → N[ε]`,
//! `g: N → M[ε]` whose two composites are the `2ε`-smoothings. At the
//! homotopy level the composites need only agree up to chain homotopy, and
//! the derived level is decided on projective replacements.
//!
//! Searches enumerate one side of the pair over a finite field and solve for
//! the other side exactly, so a returned certificate always re-verifies.

mod certificate;
mod complex;
mod distance;
mod enumerate;
mod module;

pub use certificate::{CertificateMaps, InterleavingCertificate, Level};
pub use complex::{
    derived_interleaving, search_homotopy_interleaving, verify_homotopy_interleaving, DerivedMode,
};
pub use distance::{
    candidate_epsilons, complex_rank_obstruction, estimate_complex_distance, estimate_distance,
    isometry_check, rank_obstruction, DistanceBracket, Evidence, IsometryReport, IsometryRow,
    SearchStatus,
};
pub use module::{search_module_interleaving, verify_module_interleaving};
