//! Exact divisor-class calculus on the moduli space of curves and on the
//! moduli space of even spin curves.
//!
//! The crate computes with rational Picard groups over their standard
//! boundary bases, the transfer maps of the spin covering, test-curve
//! intersection numbers, and produces per-genus Kodaira-type certificates
//! whose every number is an exact rational.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod kodaira;
pub mod picard;
pub mod report;
pub mod testcurves;
pub mod transfer;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{q, RatMatrix, RatVector, Rational};
pub use picard::{AnyClass, ClassM, ClassS, GenusCtx, Label, Side};
