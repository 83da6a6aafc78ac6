use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::cocycle::{verify_harmonic, EdgeCocycle};
use super::{TreeError, TreePair};
use crate::linalg::RatMatrix;

/// Solution of the invariant problem, normalized by `c_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    pub dimension: usize,
    /// `profile[delta]` is the common value on edges at distance `delta` from `X_F`.
    #[serde(with = "crate::exact::rational_vec")]
    pub profile: Vec<BigRational>,
}

/// Harmonic cocycles that are constant on each class `Ch(X_F, delta)`.
///
/// Every interior vertex contributes one linear equation in the class values
/// `c_0, ..., c_max`; the solution space is computed by exact elimination
/// and must be one-dimensional. The normalized solution is then expanded to
/// a cocycle and checked for harmonicity at every interior vertex.
pub fn invariant_solver(tree: &TreePair) -> Result<InvariantProfile, TreeError> {
    if tree.depth() < 2 {
        return Err(TreeError::DepthTooSmall { depth: tree.depth(), min: 2 });
    }
    let classes = tree.max_f_distance() + 1;
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    for v in tree.vertices().iter().filter(|v| v.interior) {
        let mut row = vec![0i64; classes];
        for e in tree.incident_edges(v.id) {
            row[tree.edge(e).f_distance as usize] += 1;
        }
        rows.insert(row);
    }
    let matrix = RatMatrix::from_rows(
        rows.into_iter().map(|r| r.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect()).collect(),
        classes,
    );
    let kernel = matrix.nullspace();
    if kernel.len() != 1 {
        return Err(TreeError::SolverDimension(kernel.len()));
    }
    let v = &kernel[0];
    if v[0].is_zero() {
        return Err(TreeError::ZeroNormalization);
    }
    let profile: Vec<BigRational> = v.iter().map(|x| x / &v[0]).collect();

    let cocycle = EdgeCocycle::from_fn(tree, |e| profile[e.f_distance as usize].clone());
    let report = verify_harmonic(tree, &cocycle);
    if !report.is_harmonic() {
        return Err(TreeError::NotHarmonic(report.violations.len()));
    }
    Ok(InvariantProfile { dimension: 1, profile })
}

/// Cocycle values on one distance class `Ch(X_F, delta)`, keyed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerValues {
    pub delta: usize,
    #[serde(with = "crate::exact::rational_map")]
    pub values: BTreeMap<u32, BigRational>,
}

impl LayerValues {
    /// The same value on every edge of the class.
    pub fn constant(tree: &TreePair, delta: usize, value: BigRational) -> Self {
        let values =
            tree.edges().iter().filter(|e| e.f_distance as usize == delta).map(|e| (e.id, value.clone())).collect();
        LayerValues { delta, values }
    }

    /// The common value, if the layer is nonempty and constant.
    pub fn common_value(&self) -> Option<&BigRational> {
        let mut it = self.values.values();
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }
}

/// Determines the values on `Ch(X_F, delta + 1)` from those on `Ch(X_F, delta)`.
///
/// For an edge `D` one step further out, let `M` be its panel towards `X_F`.
/// The chambers at `M` split into `C_M^{delta+1}` (class `delta + 1`, where
/// the invariant cocycle is constant) and the rest `C_M^delta`; harmonicity
/// at `M` gives `value(D) = -sum_{C_M^delta} / |C_M^{delta+1}|`.
pub fn reconstruct_layer(tree: &TreePair, layer: &LayerValues) -> Result<LayerValues, TreeError> {
    for &e in layer.values.keys() {
        let found = tree.edges().get(e as usize).ok_or(TreeError::UnknownEdge(e))?.f_distance as usize;
        if found != layer.delta {
            return Err(TreeError::WrongLayer { edge: e, expected: layer.delta, found });
        }
    }
    if !layer.values.is_empty() && layer.common_value().is_none() {
        return Err(TreeError::NonConstantLayer { delta: layer.delta });
    }
    let target = layer.delta + 1;
    let mut values = BTreeMap::new();
    for d in tree.edges().iter().filter(|e| e.f_distance as usize == target) {
        let panel = d.endpoints[0];
        let mut upper = 0i64;
        let mut lower_sum = BigRational::zero();
        for c in tree.incident_edges(panel) {
            if tree.edge(c).f_distance as usize == target {
                upper += 1;
            } else {
                lower_sum += layer.values.get(&c).ok_or(TreeError::MissingLayerValue(c))?;
            }
        }
        values.insert(d.id, -lower_sum / BigRational::from_integer(BigInt::from(upper)));
    }
    Ok(LayerValues { delta: target, values })
}
