//! Poincaré polynomials, Betti numbers and divisor invariants of the moduli
//! spaces of genus-1 stable quotients `Q̄₁(ℙⁿ⁻¹, d)`.
//!
//! The pipeline is:
//!
//! - [`polya`] counts binary bracelets, which index the boundary strata of
//!   the `n = 1` space;
//! - [`genus1`] turns those counts into the Poincaré polynomial of
//!   `Q̄₁(G(1,1), d)`, three different ways;
//! - [`graph_enum`] lists the decorated cycles indexing the torus-fixed loci
//!   that are not copies of the `n = 1` space;
//! - [`localization`] computes normal-bundle weights at every fixed locus and
//!   sums the Białynicki-Birula cells;
//! - [`divisors`] handles the rank-2 intersection calculus.

pub mod cli;
pub mod divisors;
pub mod genus1;
pub mod graph_enum;
pub mod localization;
pub mod polya;
pub mod polynomial;

pub use divisors::{CurveClass, DivisorClass};
pub use genus1::Genus1Result;
pub use graph_enum::{DecoratedGraph, EnumerationParams};
pub use localization::{
    Assembly, ExclusionRule, FixedLocusRecord, LocalizationConfig, NodeSmoothing, WeightVector,
};

pub use polynomial::IntPolynomial;
