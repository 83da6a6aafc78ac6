//! Affine Coxeter systems: construction, growth series, finite Poincaré
//! polynomials, exponents, and the diagram action of Omega.

mod affine;
mod cartan;
mod finite;
mod growth;
mod omega;
mod system;

pub use affine::AffineMap;
pub use cartan::{cartan_matrix, CartanType, Family, RootData};
pub use finite::{exponents, factor_into_geometric, poincare_finite, poincare_finite_enumerated};
pub use growth::{growth_coefficients, growth_coefficients_with, GrowthSeries, SeriesSource, DEFAULT_ELEMENT_BUDGET};
pub use omega::{epsilon_of_omega, omega_group, omega_group_of, permutation_sign, OmegaElement};
pub use system::{build_affine_system, CoxeterSystem, INFINITE_ORDER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid Cartan type {family}{rank}: {constraint}")]
    InvalidType { family: Family, rank: usize, constraint: &'static str },
    #[error("element budget of {budget} exceeded; counts so far: {partial:?}")]
    BudgetExceeded { budget: usize, partial: Vec<u64> },
    #[error("Poincaré polynomial {poly} does not factor into geometric sums")]
    FactorizationFailed { poly: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
