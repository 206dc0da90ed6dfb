//! Characteristic classes of formal bundles: Whitney sums, duals, tensor
//! products by the splitting principle, Segre classes, projective bundles
//! and pushforward.

mod bundle;
mod grassmannian;
mod projective;
pub mod symmetric;

pub use bundle::{complement, direct_sum_power, dual, evaluate, line_bundle, segre, tensor, whitney_sum, BundleClass};
pub use grassmannian::{
    chern_vars, grassmannian_presentation, raw_tautological, segre_polynomials, solve_linear, universal_total, Gr35Mod2,
};
pub use projective::{projective_bundle_ring, ProjectiveBundle, ProjectiveBundleRing};

#[cfg(test)]
mod tests;
