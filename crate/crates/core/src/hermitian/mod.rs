//! Exact Hermitian linear algebra over `ℚ(i)`: rank, inertia and `m(A)`,
//! Clifford families realizing invertible subspaces, and the explicit
//! rank-≥4 family of 5×5 matrices.

mod clifford;
mod family;
mod gaussian;
mod matrix;
mod sampling;
pub mod symbolic;

pub use clifford::{clifford_family, two_adic, verify_invertible_span, CliffordFamily, SpanVerification, Witness};
pub use family::{verify_family, Factorization, FamilyMatrix, FamilyVerification, SymbolicFamily, PARAMETERS};
pub use gaussian::GaussianRational;
pub use matrix::{inertia, m_value, rank_exact, HermitianMatrix, Inertia, Matrix};
pub use sampling::{random_nonzero_tuple, random_rational, trial_rng, DEFAULT_SEED};
