//! Finite-truncation toolkit for free-probability conformal nets.
//!
//! - [`oneparticle`]: lowest-weight one-particle modules and Möbius/Cayley geometry of S¹
//! - [`fock`]: truncated full (Boltzmann) Fock space, creation operators, free fields, flip,
//!   second quantization and vacuum moments
//! - [`standard`]: real subspaces, symplectic complements and Tomita data
//! - [`thermo`]: multiplicities, partition functions and maximal temperatures of `L^(n)`

pub mod error;
pub mod fock;
pub mod oneparticle;
pub mod standard;
pub mod thermo;

pub use error::{Error, Result};
pub use num_complex::Complex64;
