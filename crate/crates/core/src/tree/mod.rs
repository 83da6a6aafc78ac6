//! Rank-one model: the `(q_E+1)`-regular tree `X_E` truncated around a root
//! edge, with the `(q_F+1)`-regular subtree `X_F` marked inside it.
//!
//! Chambers are edges and panels are vertices. Harmonic cocycles are exact
//! rational functions on edges summing to zero around every vertex.

mod automorphism;
mod build;
mod cocycle;
mod invariant;

pub use automorphism::{
    check_epsilon_homomorphism, epsilon_tree, EpsilonSampleReport, TreeAutomorphism, MIN_SAMPLED_PAIRS,
};
pub use build::{build_tree_pair, build_tree_pair_with_budget, Edge, TreePair, Vertex, DEFAULT_TREE_BUDGET};
pub use cocycle::{
    decay_check, distance_to_f, iwahori_cocycle, tree_period, verify_harmonic, verify_harmonic_with, EdgeCocycle,
    HarmonicityReport, Violation,
};
pub use invariant::{invariant_solver, reconstruct_layer, InvariantProfile, LayerValues};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("q_F = {0} is not a supported prime power (2, 3, 4, 5, 7, 8 or 9)")]
    UnsupportedResidueSize(u64),
    #[error("depth {depth} is below the minimum {min}")]
    DepthTooSmall { depth: usize, min: usize },
    #[error("tree of depth {smallest_failing_depth} already exceeds the budget of {budget} edges")]
    BudgetExceeded { budget: usize, smallest_failing_depth: usize },
    #[error("cocycle has {found} values, tree has {expected} edges")]
    CocycleShape { expected: usize, found: usize },
    #[error("edge {0} is not in the tree")]
    UnknownEdge(u32),
    #[error("values on distance class {delta} are not constant")]
    NonConstantLayer { delta: usize },
    #[error("edge {edge} is at distance {found} from X_F, expected {expected}")]
    WrongLayer { edge: u32, expected: usize, found: usize },
    #[error("no value supplied for edge {0} of the lower layer")]
    MissingLayerValue(u32),
    #[error("invariant cocycle space has dimension {0}, expected 1")]
    SolverDimension(usize),
    #[error("invariant solution vanishes on X_F and cannot be normalized")]
    ZeroNormalization,
    #[error("solved profile is not harmonic at {0} interior vertices")]
    NotHarmonic(usize),
    #[error("map does not send edge {0} to an edge")]
    NotAdjacencyPreserving(u32),
    #[error("map preserves vertex types on some edges and swaps them on others")]
    NotLabelCoherent,
    #[error("map is not defined on any edge")]
    EmptyDomain,
    #[error("invalid port bijection: {0}")]
    InvalidPortMap(String),
}
