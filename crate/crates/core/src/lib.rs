//! Exact computations for Kauffman bracket skein modules of Dehn fillings:
//! character counts, coordinate-ring bases, and SO(3) lens-space invariants.

pub mod charvar;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod knots;
pub mod qtorus;
pub mod rt;
pub mod suite;

pub use error::{Error, Result};
