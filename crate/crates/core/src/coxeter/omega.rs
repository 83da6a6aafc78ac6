use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cartan::{CartanType, Family};
use super::system::{build_affine_system, CoxeterSystem};
use super::CoxeterError;

/// A permutation of the affine diagram nodes `0..=d` coming from the
/// fundamental group of the extended affine Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaElement {
    /// `perm[i]` is the image of node `i`.
    perm: Vec<usize>,
}

impl OmegaElement {
    pub fn identity(n: usize) -> Self {
        OmegaElement { perm: (0..n).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(OmegaElement { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OmegaElement) -> OmegaElement {
        OmegaElement { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn preserves(&self, coxeter_matrix: &[Vec<u32>]) -> bool {
        let n = self.perm.len();
        (0..n).all(|i| (0..n).all(|j| coxeter_matrix[self.perm[i]][self.perm[j]] == coxeter_matrix[i][j]))
    }
}

/// Signature of a node permutation.
pub fn epsilon_of_omega(omega: &OmegaElement) -> i8 {
    permutation_sign(omega.perm())
}

pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn cycle_perm(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for cycle in cycles {
        for (k, &i) in cycle.iter().enumerate() {
            perm[i] = cycle[(k + 1) % cycle.len()];
        }
    }
    perm
}

/// Tabulated generators of Omega as diagram permutations.
fn omega_generators(ty: CartanType) -> Vec<Vec<usize>> {
    let d = ty.rank();
    let n = d + 1;
    match ty.family() {
        Family::A => vec![(0..n).map(|i| (i + 1) % n).collect()],
        Family::B => vec![cycle_perm(n, &[&[0, 1]])],
        Family::C => vec![(0..n).map(|i| d - i).collect()],
        Family::D => {
            let swap = cycle_perm(n, &[&[0, 1], &[d - 1, d]]);
            let mut reversal: Vec<usize> = (0..n).map(|i| d - i).collect();
            if d % 2 == 1 {
                // 0 -> d -> 1 -> d-1 -> 0, middle nodes reversed
                reversal[0] = d;
                reversal[d] = 1;
                reversal[1] = d - 1;
                reversal[d - 1] = 0;
            }
            vec![swap, reversal]
        }
        Family::E => match d {
            6 => vec![cycle_perm(n, &[&[1, 6, 0], &[3, 5, 2]])],
            7 => vec![cycle_perm(n, &[&[0, 7], &[1, 6], &[3, 5]])],
            _ => vec![],
        },
        Family::F | Family::G => vec![],
    }
}

/// Omega as a list of node permutations, identity first, the rest sorted.
pub fn omega_group(family: Family, rank: usize) -> Result<Vec<OmegaElement>, CoxeterError> {
    let system = build_affine_system(family, rank)?;
    omega_group_of(&system)
}

pub fn omega_group_of(system: &CoxeterSystem) -> Result<Vec<OmegaElement>, CoxeterError> {
    let n = system.rank() + 1;
    let gens: Vec<OmegaElement> = omega_generators(system.cartan_type())
        .into_iter()
        .map(|p| OmegaElement::from_perm(p).expect("tabulated permutations are bijections"))
        .collect();
    for g in &gens {
        if !g.preserves(system.coxeter_matrix()) {
            return Err(CoxeterError::Internal(format!(
                "tabulated Omega element {:?} is not a diagram automorphism of {}",
                g.perm(),
                system.cartan_type()
            )));
        }
    }
    let mut group: BTreeSet<OmegaElement> = BTreeSet::from([OmegaElement::identity(n)]);
    let mut frontier = vec![OmegaElement::identity(n)];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = g.compose(&x);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let identity = OmegaElement::identity(n);
    let mut out = vec![identity.clone()];
    out.extend(group.into_iter().filter(|x| *x != identity));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_swap() {
        let g = omega_group(Family::A, 1).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].perm(), &[1, 0]);
        assert_eq!(epsilon_of_omega(&g[1]), -1);
        assert_eq!(epsilon_of_omega(&g[0]), 1);
    }

    #[test]
    fn a2_rotations_are_even() {
        let g = omega_group(Family::A, 2).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(|w| epsilon_of_omega(w) == 1));
    }

    #[test]
    fn group_orders() {
        let cases = [
            (Family::A, 4, 5),
            (Family::B, 3, 2),
            (Family::C, 3, 2),
            (Family::D, 4, 4),
            (Family::D, 5, 4),
            (Family::D, 6, 4),
            (Family::E, 6, 3),
            (Family::E, 7, 2),
            (Family::E, 8, 1),
            (Family::F, 4, 1),
            (Family::G, 2, 1),
        ];
        for (f, r, n) in cases {
            assert_eq!(omega_group(f, r).unwrap().len(), n, "{f}{r}");
        }
    }

    #[test]
    fn d_odd_is_cyclic_d_even_is_klein() {
        let odd = omega_group(Family::D, 5).unwrap();
        assert!(odd.iter().any(|w| w.compose(w) != OmegaElement::identity(6)));
        let even = omega_group(Family::D, 6).unwrap();
        assert!(even.iter().all(|w| w.compose(w) == OmegaElement::identity(7)));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(OmegaElement::from_perm(vec![0, 0]).is_none());
        assert!(OmegaElement::from_perm(vec![2, 0]).is_none());
    }
}
