//! Independent oracles and concrete models: exact averages over Sₙ and Hₙ,
//! Monte Carlo Haar sampling on Oₙ and Bₙ, the 2×2 half-independence model,
//! and finite de Finetti gaps for an urn and the sphere.

mod definetti;
mod groups;
mod half;
mod sampling;

pub use definetti::{sphere_definetti_gap, sphere_moment_mc, urn_definetti_gap, urn_moment_by_enumeration, GapReport, UrnSpec};
pub use groups::{fixed_point_identity_check, group_integral_exact, FiniteGroupSpec, GroupFamily, SignedPermutation};
pub use half::{
    half_model_moment, half_model_vs_cumulants, is_stieltjes_moment_sequence, parity_normal_form, parity_orbit, HalfModelReport,
    HalfModelSpec, ParityForm,
};
pub use sampling::{
    estimate_many, group_integral_mc, group_integral_mc_many, sample_bistochastic, sample_haar_orthogonal, McConfig, McEstimate, McGroup,
};
