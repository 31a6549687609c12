//! Ext of Weierstraß Hopf algebroids via the cobar complex.

pub mod algebroid;
pub mod chart;
pub mod cobar;
mod packed;

pub use algebroid::{weierstrass_invariants, HopfAlgebroid};
pub use chart::{delta_stabilize, ext_chart, ext_chart_with_cap, yoneda_product, ChartFlag, ExtCell, ExtChart, ExtClass};
pub use cobar::{cobar_basis, cobar_differential, verify_d_squared_symbolic, CobarComplex, DEFAULT_BASIS_CAP};

use crate::Result;

/// The full Weierstraß algebroid `(A, Γ)`.
pub fn build_algebroid() -> Result<HopfAlgebroid> {
    HopfAlgebroid::weierstrass()
}

/// Cobar complex of the full algebroid with the default basis cap.
pub fn cobar(s_max: usize, n_max: usize) -> Result<CobarComplex> {
    CobarComplex::build(&build_algebroid()?, s_max, n_max, DEFAULT_BASIS_CAP)
}
