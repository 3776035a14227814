//! Minimal symplectic fillings of lens spaces.
//!
//! Hirzebruch–Jung continued fractions ([`rationals`]), tridiagonal
//! determinants ([`tridiag`]), admissible zero tuples ([`zero_tuples`]),
//! Lisca's fillings with their `b_2` and fundamental-group order
//! ([`fillings`]), and exhaustive sweeps checking the bounds relating the
//! two ([`theorems`]).

pub mod cli;
pub mod error;
pub mod fillings;
pub mod rationals;
pub mod serial;
pub mod theorems;
pub mod tridiag;
pub mod zero_tuples;

pub use error::{Error, Result};
