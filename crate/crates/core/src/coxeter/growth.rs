use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::affine::AffineMap;
use super::cartan::{CartanType, Family};
use super::finite::{exponents, poincare_finite};
use super::system::CoxeterSystem;
use super::CoxeterError;
use crate::exec::{self, Exec};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_ELEMENT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesSource {
    Enumerated,
    ClosedForm,
}

/// Truncated growth series `a_0, ..., a_K` of an affine Weyl group, where
/// `a_k` counts elements of length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub family: Family,
    pub rank: usize,
    pub coefficients: Vec<u64>,
    /// Truncation depth `K`; `coefficients.len() == K + 1`.
    pub truncation: usize,
    pub source: SeriesSource,
}

impl GrowthSeries {
    pub fn cartan_type(&self) -> CartanType {
        CartanType::new(self.family, self.rank).expect("series built from a validated type")
    }

    pub fn get(&self, k: usize) -> Option<u64> {
        self.coefficients.get(k).copied()
    }

    /// Series expanded from `W_fin(t) / prod_i (1 - t^{m_i})`.
    pub fn closed_form(ty: CartanType, truncation: usize) -> Result<Self, CoxeterError> {
        let poly = poincare_finite(ty.family(), ty.rank())?;
        let exps = exponents(ty.family(), ty.rank())?;
        let coefficients = poly
            .series_over_cyclic_denominators(&exps, truncation)
            .into_iter()
            .map(|c| u64::try_from(c).map_err(|_| CoxeterError::Internal("negative growth coefficient".into())))
            .collect::<Result<_, _>>()?;
        Ok(GrowthSeries {
            family: ty.family(),
            rank: ty.rank(),
            coefficients,
            truncation,
            source: SeriesSource::ClosedForm,
        })
    }
}

/// Counts group elements by Cayley-graph distance from the identity.
pub fn growth_coefficients(
    system: &CoxeterSystem,
    truncation: usize,
    budget: usize,
) -> Result<GrowthSeries, CoxeterError> {
    growth_coefficients_with(system, truncation, budget, Exec::default())
}

pub fn growth_coefficients_with(
    system: &CoxeterSystem,
    truncation: usize,
    budget: usize,
    exec: Exec,
) -> Result<GrowthSeries, CoxeterError> {
    let coefficients = layer_counts(system.generators(), system.rank(), truncation, budget, exec)?;
    Ok(GrowthSeries {
        family: system.family(),
        rank: system.rank(),
        coefficients,
        truncation,
        source: SeriesSource::Enumerated,
    })
}

/// Breadth-first layer sizes of the Cayley graph for involutive generators.
///
/// The Cayley graph of a Coxeter group is bipartite (the sign of the linear
/// part alternates), so the neighbours of layer `k` lie in layers `k - 1` and
/// `k + 1` only; three layers are kept in memory at a time.
pub(crate) fn layer_counts(
    generators: &[AffineMap],
    dim: usize,
    max_depth: usize,
    budget: usize,
    exec: Exec,
) -> Result<Vec<u64>, CoxeterError> {
    let mut counts = vec![1u64];
    let mut total = 1usize;
    let mut previous: HashSet<AffineMap> = HashSet::new();
    let mut current = vec![AffineMap::identity(dim)];

    for _ in 0..max_depth {
        let prev = &previous;
        let candidates = exec::map_collect(exec, &current, |g| {
            generators.iter().map(|s| g.compose(s)).filter(|h| !prev.contains(h)).collect::<Vec<_>>()
        });
        let mut next: Vec<AffineMap> = candidates.into_iter().flatten().collect();
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > budget {
            return Err(CoxeterError::BudgetExceeded { budget, partial: counts });
        }
        counts.push(next.len() as u64);
        previous = current.into_iter().collect();
        current = next;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_affine_system;

    #[test]
    fn infinite_dihedral() {
        let s = build_affine_system(Family::A, 1).unwrap();
        let g = growth_coefficients(&s, 4, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(g.coefficients, vec![1, 2, 2, 2, 2]);
        assert_eq!(g.source, SeriesSource::Enumerated);
    }

    #[test]
    fn a2_linear_growth() {
        let s = build_affine_system(Family::A, 2).unwrap();
        let g = growth_coefficients(&s, 4, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(g.coefficients, vec![1, 3, 6, 9, 12]);
    }

    #[test]
    fn depth_zero_is_identity_only() {
        let s = build_affine_system(Family::E, 8).unwrap();
        let g = growth_coefficients(&s, 0, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(g.coefficients, vec![1]);
        assert_eq!(g.truncation, 0);
    }

    #[test]
    fn budget_error_carries_partial_counts() {
        let s = build_affine_system(Family::A, 2).unwrap();
        match growth_coefficients(&s, 10, 20) {
            Err(CoxeterError::BudgetExceeded { budget, partial }) => {
                assert_eq!(budget, 20);
                // 1 + 3 + 6 = 10 fits, + 9 = 19 fits, + 12 does not
                assert_eq!(partial, vec![1, 3, 6, 9]);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let s = build_affine_system(Family::G, 2).unwrap();
        let a = growth_coefficients_with(&s, 10, DEFAULT_ELEMENT_BUDGET, Exec::Sequential).unwrap();
        let b = growth_coefficients_with(&s, 10, DEFAULT_ELEMENT_BUDGET, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
