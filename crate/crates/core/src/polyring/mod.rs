//! Exact sparse graded polynomials over ℤ, ℚ and 𝔽₂, and their quotients
//! by homogeneous relations.

mod coeff;
mod echelon;
mod monomial;
mod poly;
mod quotient;

pub use coeff::{mod2, CoeffKind, Coefficient, Field, Gf2};
pub use echelon::Echelon;
pub use monomial::{GradedVariable, Monomial, MonomialDisplay, VarSet};
pub use poly::GradedPolynomial;
pub use quotient::{QuotientRing, DEFAULT_TRUNCATION};
