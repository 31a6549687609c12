//! Exact computations around vector bundles on the moduli stack of elliptic
//! curves localized at 3.
//!
//! The crate is `no_std` (with `alloc`) so the algebra can be embedded
//! anywhere; IO, file formats and the command line live in the `ellvb` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod exactalg;
pub mod hopfext;
pub mod moduli3;
pub mod reps;
pub mod wpl;

pub use error::{Error, Result};
