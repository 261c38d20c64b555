//! Grothendieck polynomials, set-valued tableaux and the structure constants
//! of their products, computed exactly.

pub mod error;
pub mod ring;

pub use error::{Error, ParseError, Result};
pub mod coeffs;
pub mod groth;
pub mod hecke;
pub mod insertion;
pub mod par;
pub mod shapes;
pub mod tableaux;
pub mod verify;
