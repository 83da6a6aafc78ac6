//! Finite Cartan data in Bourbaki numbering.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::CoxeterError;

/// Irreducible root system family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(format!("unknown family '{other}' (expected one of A, B, C, D, E, F, G)")),
        }
    }
}

/// A validated (family, rank) pair naming an irreducible reduced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CoxeterError> {
        let constraint = match family {
            Family::A if rank < 1 => Some("type A needs rank >= 1"),
            Family::B if rank < 3 => Some("type B needs rank >= 3 (B2 is C2)"),
            Family::C if rank < 2 => Some("type C needs rank >= 2 (C1 is A1)"),
            Family::D if rank < 4 => Some("type D needs rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("type F needs rank 4"),
            Family::G if rank != 2 => Some("type G needs rank 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(CoxeterError::InvalidType { family, rank, constraint }),
            None => Ok(CartanType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Finite Cartan matrix `c[i][j] = <alpha_i^vee, alpha_j>`, 0-based over the
/// Bourbaki nodes 1..=d.
pub fn cartan_matrix(ty: CartanType) -> Vec<Vec<i64>> {
    let d = ty.rank();
    let mut c = vec![vec![0i64; d]; d];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match ty.family() {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..d.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..d - 2 {
                link(i, i + 1);
            }
            link(d - 3, d - 1);
        }
        Family::E => {
            // 1-3-4-5-...-d with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for i in 2..d - 1 {
                link(i, i + 1);
            }
        }
    }
    match ty.family() {
        // alpha_d short
        Family::B => c[d - 1][d - 2] = -2,
        // alpha_d long
        Family::C => c[d - 2][d - 1] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Family::F => c[2][1] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// Root data derived from a Cartan matrix by reflection closure.
#[derive(Debug, Clone)]
pub struct RootData {
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// Highest root `theta` in simple-root coordinates.
    pub highest_root: Vec<i64>,
    /// Coroot of the highest root in simple-coroot coordinates.
    pub highest_coroot: Vec<i64>,
}

impl RootData {
    pub fn new(ty: CartanType) -> Result<Self, CoxeterError> {
        let cartan = cartan_matrix(ty);
        let d = ty.rank();

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..d {
                let pairing: i64 = (0..d).map(|j| beta[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive_roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let highest_root =
            positive_roots.last().cloned().ok_or_else(|| CoxeterError::Internal("empty root system".into()))?;

        // Squared root lengths up to a common scalar, propagated along the diagram.
        let mut norm: Vec<Option<Ratio<i64>>> = vec![None; d];
        norm[0] = Some(Ratio::from_integer(1));
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..d {
                if i != j && cartan[i][j] != 0 && norm[j].is_none() {
                    let ni = norm[i].expect("visited");
                    norm[j] = Some(ni * Ratio::new(cartan[i][j], cartan[j][i]));
                    stack.push(j);
                }
            }
        }
        let norm: Vec<Ratio<i64>> = norm
            .into_iter()
            .map(|n| n.ok_or_else(|| CoxeterError::Internal("disconnected Dynkin diagram".into())))
            .collect::<Result<_, _>>()?;
        // (alpha_i, alpha_j) = c[i][j] * |alpha_i|^2 / 2
        let mut theta_norm = Ratio::from_integer(0);
        for i in 0..d {
            for j in 0..d {
                theta_norm += Ratio::from_integer(highest_root[i] * highest_root[j] * cartan[i][j]) * norm[i] / 2;
            }
        }
        let mut highest_coroot = Vec::with_capacity(d);
        for i in 0..d {
            let k = Ratio::from_integer(highest_root[i]) * norm[i] / theta_norm;
            if !k.is_integer() {
                return Err(CoxeterError::Internal(format!("highest coroot coefficient {k} is not integral")));
            }
            highest_coroot.push(k.to_integer());
        }
        Ok(RootData { cartan, positive_roots, highest_root, highest_coroot })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, r: usize) -> CartanType {
        CartanType::new(f, r).unwrap()
    }

    #[test]
    fn rejects_invalid_pairs() {
        for (f, r) in [
            (Family::A, 0),
            (Family::B, 2),
            (Family::C, 1),
            (Family::D, 3),
            (Family::E, 5),
            (Family::E, 9),
            (Family::F, 3),
            (Family::G, 3),
        ] {
            let err = CartanType::new(f, r).unwrap_err();
            assert!(matches!(err, CoxeterError::InvalidType { .. }), "{f}{r}");
            assert!(err.to_string().contains("needs rank"));
        }
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (Family::A, 1, 1),
            (Family::A, 3, 6),
            (Family::B, 3, 9),
            (Family::C, 2, 4),
            (Family::D, 4, 12),
            (Family::G, 2, 6),
            (Family::F, 4, 24),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
        ];
        for (f, r, n) in cases {
            assert_eq!(RootData::new(ty(f, r)).unwrap().positive_roots.len(), n, "{f}{r}");
        }
    }

    #[test]
    fn highest_roots_match_tables() {
        let cases: [(Family, usize, &[i64]); 7] = [
            (Family::B, 4, &[1, 2, 2, 2]),
            (Family::C, 3, &[2, 2, 1]),
            (Family::D, 5, &[1, 2, 2, 1, 1]),
            (Family::E, 8, &[2, 3, 4, 6, 5, 4, 3, 2]),
            (Family::E, 6, &[1, 2, 2, 3, 2, 1]),
            (Family::F, 4, &[2, 3, 4, 2]),
            (Family::G, 2, &[3, 2]),
        ];
        for (f, r, theta) in cases {
            assert_eq!(RootData::new(ty(f, r)).unwrap().highest_root, theta, "{f}{r}");
        }
    }

    #[test]
    fn highest_coroots() {
        // theta^vee is the highest short root of the dual system
        assert_eq!(RootData::new(ty(Family::G, 2)).unwrap().highest_coroot, vec![1, 2]);
        assert_eq!(RootData::new(ty(Family::B, 3)).unwrap().highest_coroot, vec![1, 2, 1]);
        assert_eq!(RootData::new(ty(Family::C, 3)).unwrap().highest_coroot, vec![1, 1, 1]);
        assert_eq!(RootData::new(ty(Family::F, 4)).unwrap().highest_coroot, vec![2, 3, 2, 1]);
        assert_eq!(RootData::new(ty(Family::A, 4)).unwrap().highest_coroot, vec![1; 4]);
    }

    #[test]
    fn family_parses() {
        assert_eq!("g".parse::<Family>().unwrap(), Family::G);
        assert!("Z".parse::<Family>().is_err());
    }
}
