use serde::{Deserialize, Serialize};

use super::affine::AffineMap;
use super::cartan::{CartanType, Family, RootData};
use super::CoxeterError;

/// Entry of the Coxeter matrix standing for an infinite order.
pub const INFINITE_ORDER: u32 = 0;

/// Coxeter order from the product `a_ij * a_ji` of Cartan entries.
fn order_from_cartan(product: i64) -> u32 {
    match product {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => INFINITE_ORDER,
    }
}

/// An irreducible affine Coxeter system realized by affine reflections of
/// the coroot lattice, written in the simple-coroot basis.
///
/// Node 0 is the affine node; nodes `1..=d` follow Bourbaki numbering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoxeterSystem {
    cartan_type: CartanType,
    /// Symmetric `(d+1)x(d+1)` matrix of orders, [`INFINITE_ORDER`] for infinity.
    coxeter_matrix: Vec<Vec<u32>>,
    generators: Vec<AffineMap>,
    #[serde(skip)]
    roots: Option<RootData>,
}

impl CoxeterSystem {
    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn family(&self) -> Family {
        self.cartan_type.family()
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    /// `s_0, s_1, ..., s_d`.
    pub fn generators(&self) -> &[AffineMap] {
        &self.generators
    }

    /// The finite Weyl group generators `s_1, ..., s_d`.
    pub fn finite_generators(&self) -> &[AffineMap] {
        &self.generators[1..]
    }

    pub fn root_data(&self) -> RootData {
        match &self.roots {
            Some(r) => r.clone(),
            None => RootData::new(self.cartan_type).expect("type validated at construction"),
        }
    }

    /// Order of `s_i s_j` computed from the matrices, `None` for infinite.
    pub fn product_order(&self, i: usize, j: usize) -> Option<u32> {
        let g = self.generators[i].compose(&self.generators[j]);
        let lin = g.linear_part();
        let mut power = lin.clone();
        let mut n = 1u32;
        while !power.is_identity() {
            power = power.compose(&lin);
            n += 1;
            if n > 12 {
                return None;
            }
        }
        if g.pow(n).is_identity() {
            Some(n)
        } else {
            None
        }
    }

    /// Checks every generator invariant; returns the first violation.
    pub fn check_invariants(&self) -> Result<(), CoxeterError> {
        let n = self.generators.len();
        for (i, s) in self.generators.iter().enumerate() {
            if !s.compose(s).is_identity() {
                return Err(CoxeterError::Internal(format!("generator s_{i} is not an involution")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let expected = self.coxeter_matrix[i][j];
                let actual = self.product_order(i, j).unwrap_or(INFINITE_ORDER);
                if expected != actual {
                    return Err(CoxeterError::Internal(format!(
                        "s_{i} s_{j} has order {actual}, Coxeter matrix says {expected} (0 = infinity)"
                    )));
                }
            }
        }
        if !diagram_connected(&self.coxeter_matrix) {
            return Err(CoxeterError::Internal("affine diagram is not connected".into()));
        }
        Ok(())
    }
}

fn diagram_connected(m: &[Vec<u32>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && m[i][j] != 2 && i != j {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Builds the affine Weyl group of the given type.
pub fn build_affine_system(family: Family, rank: usize) -> Result<CoxeterSystem, CoxeterError> {
    let cartan_type = CartanType::new(family, rank)?;
    let roots = RootData::new(cartan_type)?;
    let d = rank;
    let c = &roots.cartan;
    let theta = &roots.highest_root;
    let theta_vee = &roots.highest_coroot;

    let mut generators = Vec::with_capacity(d + 1);

    // s_0(v) = v - (<theta, v> - 1) theta^vee, with <theta, v> = sum_j v_j <alpha_j^vee, theta>.
    let pair_theta: Vec<i64> = (0..d).map(|j| (0..d).map(|i| theta[i] * c[j][i]).sum()).collect();
    let mut lin = vec![vec![0i64; d]; d];
    for r in 0..d {
        for col in 0..d {
            lin[r][col] = i64::from(r == col) - theta_vee[r] * pair_theta[col];
        }
    }
    generators.push(AffineMap::from_parts(&lin, theta_vee));

    // s_i(v) = v - <alpha_i, v> alpha_i^vee
    for i in 0..d {
        let mut lin: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|col| i64::from(r == col)).collect()).collect();
        for (col, entry) in lin[i].iter_mut().enumerate() {
            *entry -= c[col][i];
        }
        generators.push(AffineMap::from_parts(&lin, &vec![0; d]));
    }

    // Extended Cartan matrix with alpha_0 = delta - theta.
    let mut ext = vec![vec![0i64; d + 1]; d + 1];
    ext[0][0] = 2;
    for j in 0..d {
        ext[0][j + 1] = -(0..d).map(|i| theta_vee[i] * c[i][j]).sum::<i64>();
        ext[j + 1][0] = -pair_theta[j];
        for i in 0..d {
            ext[i + 1][j + 1] = c[i][j];
        }
    }
    let coxeter_matrix = (0..=d)
        .map(|i| (0..=d).map(|j| if i == j { 1 } else { order_from_cartan(ext[i][j] * ext[j][i]) }).collect())
        .collect();

    let system = CoxeterSystem { cartan_type, coxeter_matrix, generators, roots: Some(roots) };
    system.check_invariants()?;
    Ok(system)
}
