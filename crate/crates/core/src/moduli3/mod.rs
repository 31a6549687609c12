//! Standard vector bundles on the moduli of elliptic curves localized at 3.
//!
//! Bundles are direct sums of `ω^k`, `E_α ⊗ ω^k` and `f_*f^*O ⊗ ω^k`; the
//! Ext and cohomology tables are over F3 and indexed by twist residues.

pub mod bundle;
pub mod dictionary;
pub mod normalize;

pub use bundle::{
    cohomology_dim, dual, ext_dim, ext_entry, h1_vanishes, rank_h1_corollary_check, summand_cohomology,
    summand_ext, tensor, ExtEntry, Kind, StandardBundle, StandardSummand, FPUSH_PERIOD, PIC_ORDER,
};
pub use dictionary::{dictionary, i_functor, lattice_fingerprint, sign_lattice};
pub use normalize::{normalize, normalize_stage, random_iterated_extension, Choice, ExtClassVector, IteratedExtension, Priority, Resolver};
