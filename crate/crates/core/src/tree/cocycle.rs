use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{TreeError, TreePair};
use crate::exec::{self, Exec};

/// An exact rational value on every edge of a [`TreePair`], indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCocycle {
    #[serde(with = "crate::exact::rational_vec")]
    values: Vec<BigRational>,
}

impl EdgeCocycle {
    pub fn from_values(tree: &TreePair, values: Vec<BigRational>) -> Result<Self, TreeError> {
        if values.len() != tree.edges().len() {
            return Err(TreeError::CocycleShape { expected: tree.edges().len(), found: values.len() });
        }
        Ok(EdgeCocycle { values })
    }

    pub fn from_fn(tree: &TreePair, f: impl Fn(&super::Edge) -> BigRational) -> Self {
        EdgeCocycle { values: tree.edges().iter().map(f).collect() }
    }

    pub fn zero(tree: &TreePair) -> Self {
        Self::constant(tree, BigRational::zero())
    }

    pub fn constant(tree: &TreePair, value: BigRational) -> Self {
        EdgeCocycle { values: vec![value; tree.edges().len()] }
    }

    pub fn indicator(tree: &TreePair, edge: u32) -> Self {
        let mut c = Self::zero(tree);
        c.values[edge as usize] = BigRational::one();
        c
    }

    pub fn get(&self, edge: u32) -> &BigRational {
        &self.values[edge as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `f(e) = (-1/q_E)^{d(e_0, e)}`, normalized by `f(e_0) = 1`.
pub fn iwahori_cocycle(tree: &TreePair) -> EdgeCocycle {
    let step = BigRational::new(BigInt::from(-1), BigInt::from(tree.q_e()));
    let mut powers = vec![BigRational::one()];
    for k in 1..=tree.depth() {
        let next = &powers[k - 1] * &step;
        powers.push(next);
    }
    EdgeCocycle::from_fn(tree, |e| powers[e.root_distance as usize].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: u32,
    #[serde(with = "crate::exact::rational")]
    pub sum: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarmonicityReport {
    pub violations: Vec<Violation>,
    pub interior_checked: usize,
    /// Frontier vertices, which never count as violations.
    pub boundary_skipped: usize,
}

impl HarmonicityReport {
    pub fn is_harmonic(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_harmonic(tree: &TreePair, cocycle: &EdgeCocycle) -> HarmonicityReport {
    verify_harmonic_with(tree, cocycle, Exec::default())
}

/// Sums the cocycle around every interior vertex.
pub fn verify_harmonic_with(tree: &TreePair, cocycle: &EdgeCocycle, exec: Exec) -> HarmonicityReport {
    let sums = exec::map_range(exec, tree.vertices().len(), |v| {
        let vx = &tree.vertices()[v];
        if !vx.interior {
            return None;
        }
        let sum = tree.incident_edges(vx.id).fold(BigRational::zero(), |acc, e| acc + cocycle.get(e));
        Some((vx.id, sum))
    });
    let mut report = HarmonicityReport { violations: Vec::new(), interior_checked: 0, boundary_skipped: 0 };
    for s in sums {
        match s {
            None => report.boundary_skipped += 1,
            Some((vertex, sum)) => {
                report.interior_checked += 1;
                if !sum.is_zero() {
                    report.violations.push(Violation { vertex, sum });
                }
            }
        }
    }
    report
}

/// Partial sums `S_m` of the cocycle over `F`-edges grouped by distance to
/// the root edge, `m = 0..=depth`.
pub fn tree_period(tree: &TreePair, cocycle: &EdgeCocycle) -> Vec<BigRational> {
    let mut by_sphere = vec![BigRational::zero(); tree.depth() + 1];
    for e in tree.edges().iter().filter(|e| e.in_f) {
        by_sphere[e.root_distance as usize] += cocycle.get(e.id);
    }
    let mut acc = BigRational::zero();
    by_sphere
        .into_iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

/// Gallery distance from `edge` to the nearest `F`-edge.
pub fn distance_to_f(tree: &TreePair, edge: u32) -> Result<u32, TreeError> {
    tree.edges().get(edge as usize).map(|e| e.f_distance).ok_or(TreeError::UnknownEdge(edge))
}

/// `max_e |f(e)| q_E^{d(e_0, e)}`.
pub fn decay_check(tree: &TreePair, cocycle: &EdgeCocycle) -> BigRational {
    let q_e = BigInt::from(tree.q_e());
    let mut powers = vec![BigInt::one()];
    for k in 1..=tree.depth() {
        let next = &powers[k - 1] * &q_e;
        powers.push(next);
    }
    tree.edges()
        .iter()
        .map(|e| cocycle.get(e.id).abs() * BigRational::from_integer(powers[e.root_distance as usize].clone()))
        .max()
        .unwrap_or_else(BigRational::zero)
}
