//! Exact combinatorial engine for de Finetti theorems on easy quantum groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: canonical set partitions, the lattice operations, the ten
//!   partition families attached to the easy quantum groups and their Möbius
//!   functions.
//! - [`weingarten`]: exact Gram and Weingarten matrices, Haar-state integrals of
//!   coordinate monomials, and the asymptotic estimates on Weingarten entries.
//! - [`cumulants`]: classical, free and half-liberated moment/cumulant transforms.
//! - [`models`]: independent oracles (finite group enumeration, Monte Carlo Haar
//!   sampling), the 2×2 half-independence matrix model and finite de Finetti gaps.
//! - [`verify`]: named invariant suites, used by the `wg verify` command.
//!
//! Every quantity that can be exact is an [`ExactScalar`]; floating point only
//! appears in the Monte Carlo samplers.

pub mod config;
pub mod cumulants;
pub mod error;
pub mod models;
pub mod partitions;
pub mod scalar;
pub mod verify;
pub mod weingarten;
pub mod word;

pub use error::{Error, Result};
pub use partitions::{Category, SetPartition};
pub use scalar::ExactScalar;
pub use word::Word;
