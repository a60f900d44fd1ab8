//! Exact verification of the Painleve I hierarchy.
//!
//! Both formulations are built over exact rationals: the (2, 2g+1)
//! minimal-model side (Lenard polynomials, wave matrices, spectral data) and
//! the isomonodromic side (oper and geometric Lax matrices, Darboux
//! coordinates, Hamiltonians). The `identify` module checks the dictionary
//! between them.

// triangular solves and coefficient tables read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod diffjet;
pub mod exact;
pub mod identify;
pub mod isomono;
pub mod minimal;
pub mod poisson;
pub mod psido;
pub mod render;
pub mod sample;
pub mod symfunc;
pub mod verdict;
