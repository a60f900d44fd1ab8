//! The `(2, 2g+1)` minimal-model side of the hierarchy: the wave matrices
//! `U`, `U_{2n+1}` and `A^(g)` built from the Lenard polynomials, their
//! zero-curvature relations, the spectral data of `A^(g)`, and the
//! corrected Hamiltonians in spectral Darboux coordinates.

pub mod hamiltonian;
pub mod spectral;
pub mod wave;
pub mod zero_curvature;

pub use hamiltonian::{correction_residue_check, k_hamiltonian, SpectralPoint};
pub use spectral::{spectral_data, spectral_data_at, spectral_data_symbolic, SpectralData, ToeplitzC};
pub use wave::{build_ag, build_u, build_u2n1, CCoeffs, LaxMat};
pub use zero_curvature::{zero_curvature_checks, ZeroCurvatureReport};
