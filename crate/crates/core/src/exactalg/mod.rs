//! Exact graded linear algebra over the integers.

pub mod abgroup;
pub mod fp;
pub mod graded;
pub mod homology;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod smith;

pub use abgroup::{localize_at_p, FGAbGroup};
pub use graded::{monomials_of_degree, Coefficients, GradedRing};
pub use homology::{homology_at, Homology};
pub use local::{LocalHomology, LocalizedHomology};
pub use matrix::SparseIntMatrix;
pub use poly::{Monomial, Poly};
pub use smith::{smith_normal_form, SmithForm};
