use std::collections::{HashMap, VecDeque};

use super::cartan::{cartan_matrix, CartanType, Family};
use super::growth::layer_counts;
use super::system::CoxeterSystem;
use super::CoxeterError;
use crate::exec::Exec;
use crate::poly::IntPoly;

/// Poincaré polynomial `sum_w t^{l(w)}` of the finite Weyl group.
///
/// Computed as a product over the parabolic chain `W_{1} < W_{1,2} < ... < W`:
/// each factor is the length generating function of minimal coset
/// representatives, read off as BFS distances in the orbit of the fundamental
/// weight of the newly added node. This never enumerates the group itself,
/// so it works for E8.
pub fn poincare_finite(family: Family, rank: usize) -> Result<IntPoly, CoxeterError> {
    let ty = CartanType::new(family, rank)?;
    let c = cartan_matrix(ty);
    let mut result = IntPoly::one();
    for k in 0..rank {
        let mut start = vec![0i64; k + 1];
        start[k] = 1;
        let mut dist: HashMap<Vec<i64>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([start]);
        let mut layer_sizes = vec![1i64];
        while let Some(lambda) = queue.pop_front() {
            let dl = dist[&lambda];
            for i in 0..=k {
                if lambda[i] == 0 {
                    continue;
                }
                let image: Vec<i64> = (0..=k).map(|j| lambda[j] - lambda[i] * c[j][i]).collect();
                if !dist.contains_key(&image) {
                    dist.insert(image.clone(), dl + 1);
                    if layer_sizes.len() <= dl + 1 {
                        layer_sizes.push(0);
                    }
                    layer_sizes[dl + 1] += 1;
                    queue.push_back(image);
                }
            }
        }
        result = &result * &IntPoly::new(layer_sizes);
    }
    Ok(result)
}

/// The same polynomial by brute-force BFS over the finite group generated by
/// `s_1, ..., s_d`. Only feasible for small groups.
pub fn poincare_finite_enumerated(system: &CoxeterSystem, budget: usize) -> Result<IntPoly, CoxeterError> {
    let counts = layer_counts(system.finite_generators(), system.rank(), usize::MAX, budget, Exec::default())?;
    Ok(IntPoly::new(counts.into_iter().map(|c| c as i64).collect()))
}

/// Exponents `m_1 <= ... <= m_d` with `W(t) = prod_i (1 + t + ... + t^{m_i})`.
///
/// The largest `D` for which `1 + ... + t^{D-1}` divides the remaining
/// polynomial is always one of the degrees, so peeling greedily from the top
/// recovers the factorization when it exists.
pub fn exponents(family: Family, rank: usize) -> Result<Vec<usize>, CoxeterError> {
    let poly = poincare_finite(family, rank)?;
    factor_into_geometric(&poly).ok_or_else(|| CoxeterError::FactorizationFailed { poly: poly.to_string() })
}

pub fn factor_into_geometric(poly: &IntPoly) -> Option<Vec<usize>> {
    let mut rest = poly.clone();
    let mut out = Vec::new();
    while let Some(deg) = rest.degree().filter(|&d| d > 0) {
        let m = (1..=deg).rev().find_map(|m| rest.div_exact(&IntPoly::geometric(m)).map(|q| (m, q)));
        let (m, q) = m?;
        out.push(m);
        rest = q;
    }
    if !rest.is_one() {
        return None;
    }
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(poincare_finite(Family::A, 1).unwrap().coeffs(), &[1, 1]);
        assert_eq!(poincare_finite(Family::A, 2).unwrap().coeffs(), &[1, 2, 2, 1]);
        assert_eq!(poincare_finite(Family::C, 2).unwrap().coeffs(), &[1, 2, 2, 2, 1]);
    }

    #[test]
    fn exponent_tables() {
        let cases: [(Family, usize, &[usize]); 10] = [
            (Family::A, 1, &[1]),
            (Family::A, 2, &[1, 2]),
            (Family::G, 2, &[1, 5]),
            (Family::B, 3, &[1, 3, 5]),
            (Family::C, 4, &[1, 3, 5, 7]),
            (Family::D, 5, &[1, 3, 4, 5, 7]),
            (Family::F, 4, &[1, 5, 7, 11]),
            (Family::E, 6, &[1, 4, 5, 7, 8, 11]),
            (Family::E, 7, &[1, 5, 7, 9, 11, 13, 17]),
            (Family::E, 8, &[1, 7, 11, 13, 17, 19, 23, 29]),
        ];
        for (f, r, m) in cases {
            assert_eq!(exponents(f, r).unwrap(), m, "{f}{r}");
        }
    }

    #[test]
    fn e8_order_and_top_degree() {
        let p = poincare_finite(Family::E, 8).unwrap();
        assert_eq!(p.eval_i64(1), 696_729_600);
        assert_eq!(p.degree(), Some(120));
    }

    #[test]
    fn non_factorizable_polynomial_is_rejected() {
        assert!(factor_into_geometric(&IntPoly::new(vec![1, 3, 1])).is_none());
        assert!(factor_into_geometric(&IntPoly::new(vec![2, 2])).is_none());
    }
}
