//! Integral and modular representations of S3, C2×C2, Q8, SL2(F3), GL2(F3).

pub mod decompose;
pub mod endo;
pub mod family;
pub mod group;
pub mod lattices;
pub mod rep;

pub use decompose::{decompose, fingerprint, is_isomorphic, same_krs, Component, DecompositionReport, DEFAULT_RANK_BOUND};
pub use endo::{end_algebra, hom_space, radical, EndAlgebra};
pub use family::{m_n, mbar};
pub use group::{build_group, embedding, group_hom, q8_to_klein, FiniteGroup, GroupName};
pub use lattices::{check_exact, lambda2_identification, s3_lattices, Exactness, S3Lattices};
pub use rep::{pullback_q8, Domain, IntMat, MatrixRep, RepMap};
