//! The isomonodromic side under the canonical trivial-time choice: the
//! irregular times and `P_2`, the oper-gauge Lax matrix with its
//! Vandermonde-solved `H_{inf,k}`, the geometric Lax matrix in oper and
//! symmetric Darboux coordinates, and both Hamiltonian presentations.

pub mod oper;
pub mod symmetric;
pub mod times;

pub use oper::{eigen_halfinteger_check, oper_transform, x_hook, OperL, OperPoint};
pub use symmetric::{symbolic_point, SymPoint};
pub use times::IrregularTimes;
