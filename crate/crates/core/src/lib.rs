//! Exact computations behind cup-product kernel bounds for compact Kähler
//! varieties: graded cohomology rings over ℤ/ℚ/𝔽₂, Schubert calculus on
//! Grassmannians, Chern classes of formal bundles, exact Hermitian linear
//! algebra over the Gaussian rationals, and the resulting bound tables.

pub mod algebra;
pub mod bounds;
pub mod chern;
pub mod error;
pub mod hermitian;
pub mod pipeline;
pub mod polyring;
pub mod schubert;
pub mod serde_int;

pub use algebra::{GradedAlgebra, TruncatedPolyRing};
pub use chern::{BundleClass, ProjectiveBundle, ProjectiveBundleRing};
pub use error::{Error, Result};
pub use hermitian::{GaussianRational, HermitianMatrix, Inertia};
pub use polyring::{Coefficient, Field, Gf2, GradedPolynomial, Monomial, QuotientRing, VarSet};
pub use bounds::{DEntry, KernelBoundReport, SurfaceReport};
pub use pipeline::Section3Report;
pub use schubert::{Partition, SchubertElement, SchubertRing};
