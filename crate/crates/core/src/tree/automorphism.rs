use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{TreeError, TreePair};
use crate::coxeter::permutation_sign;

/// Minimum number of composable pairs checked by [`check_epsilon_homomorphism`].
pub const MIN_SAMPLED_PAIRS: usize = 50;

/// Restriction of an automorphism of the infinite `(q_E+1)`-regular tree to
/// the materialized ball: `vertex_map[v]` is `None` where the image falls
/// outside the ball.
///
/// `X_F` need not be preserved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAutomorphism {
    vertex_map: Vec<Option<u32>>,
    /// Whether the anchor vertex keeps its bipartition label.
    pub type_preserving: bool,
}

impl TreeAutomorphism {
    pub fn identity(tree: &TreePair) -> Self {
        TreeAutomorphism { vertex_map: (0..tree.vertices().len() as u32).map(Some).collect(), type_preserving: true }
    }

    /// The automorphism sending `anchor` to `target` and port `p` of the
    /// anchor to port `anchor_ports[p]` of the target. Away from the anchor,
    /// the ports not pointing back are matched in increasing order.
    pub fn from_ports(tree: &TreePair, anchor: u32, target: u32, anchor_ports: &[usize]) -> Result<Self, TreeError> {
        let degree = tree.q_e() as usize + 1;
        let mut check = anchor_ports.to_vec();
        check.sort_unstable();
        if check != (0..degree).collect::<Vec<_>>() {
            return Err(TreeError::InvalidPortMap(format!("{anchor_ports:?} is not a permutation of 0..{degree}")));
        }
        let n = tree.vertices().len();
        if anchor as usize >= n || target as usize >= n {
            return Err(TreeError::InvalidPortMap("anchor or target outside the tree".into()));
        }
        let mut vertex_map = vec![None; n];
        vertex_map[anchor as usize] = Some(target);
        // (source, image, back port at source, back port at image)
        let mut queue = VecDeque::from([(anchor, target, None::<usize>, None::<usize>)]);
        while let Some((x, y, back_x, back_y)) = queue.pop_front() {
            let src_ports = (0..degree).filter(|&p| Some(p) != back_x);
            let dst_ports: Vec<usize> = (0..degree).filter(|&p| Some(p) != back_y).collect();
            for (k, p) in src_ports.enumerate() {
                let Some(x2) = tree.neighbor(x, p) else { continue };
                let q = if back_x.is_none() { anchor_ports[p] } else { dst_ports[k] };
                let Some(y2) = tree.neighbor(y, q) else { continue };
                vertex_map[x2 as usize] = Some(y2);
                let bx = tree.port_towards(x2, x).expect("adjacent");
                let by = tree.port_towards(y2, y).expect("adjacent");
                queue.push_back((x2, y2, Some(bx), Some(by)));
            }
        }
        let type_preserving = tree.vertex(anchor).label == tree.vertex(target).label;
        Ok(TreeAutomorphism { vertex_map, type_preserving })
    }

    /// Swaps the endpoints of the root edge, matching their children in order.
    pub fn root_swap(tree: &TreePair) -> Self {
        let ports: Vec<usize> = (0..=tree.q_e() as usize).collect();
        Self::from_ports(tree, 0, 1, &ports).expect("identity port map")
    }

    /// Permutes the child subtrees of `v` by `perm` (a permutation of `0..q_E`),
    /// fixing everything outside them.
    pub fn child_permutation(tree: &TreePair, v: u32, perm: &[usize]) -> Result<Self, TreeError> {
        let mut ports = vec![0];
        ports.extend(perm.iter().map(|&p| p + 1));
        Self::from_ports(tree, v, v, &ports)
    }

    /// Translation by `steps` along the axis through the root edge that
    /// continues through first children on both sides.
    pub fn axis_translation(tree: &TreePair, steps: usize) -> Result<Self, TreeError> {
        let mut target = 0u32;
        for _ in 0..steps {
            target = tree
                .neighbor(target, 1)
                .ok_or_else(|| TreeError::InvalidPortMap(format!("translation by {steps} leaves the tree")))?;
        }
        let ports: Vec<usize> = (0..=tree.q_e() as usize).collect();
        Self::from_ports(tree, 0, target, &ports)
    }

    pub fn image(&self, v: u32) -> Option<u32> {
        self.vertex_map.get(v as usize).copied().flatten()
    }

    /// Image of an edge, when both endpoints are mapped.
    pub fn edge_image(&self, tree: &TreePair, e: u32) -> Option<Result<u32, TreeError>> {
        let [a, b] = tree.edge(e).endpoints;
        let (ga, gb) = (self.image(a)?, self.image(b)?);
        Some(tree.edge_between(ga, gb).ok_or(TreeError::NotAdjacencyPreserving(e)))
    }

    /// `self ∘ other`, defined where `other` is and `self` is at its image.
    pub fn compose(&self, other: &TreeAutomorphism) -> TreeAutomorphism {
        TreeAutomorphism {
            vertex_map: other.vertex_map.iter().map(|y| y.and_then(|y| self.image(y))).collect(),
            type_preserving: self.type_preserving == other.type_preserving,
        }
    }

    pub fn domain_edges<'a>(&'a self, tree: &'a TreePair) -> impl Iterator<Item = u32> + 'a {
        tree.edges()
            .iter()
            .filter(|e| self.image(e.endpoints[0]).is_some() && self.image(e.endpoints[1]).is_some())
            .map(|e| e.id)
    }
}

/// Sign of the vertex-type permutation induced on chambers.
///
/// For every edge `e` in the domain, orders the endpoints of `e` and of `g e`
/// by type and takes the signature of the matching; all edges must agree.
pub fn epsilon_tree(tree: &TreePair, g: &TreeAutomorphism) -> Result<i8, TreeError> {
    let mut sign = None;
    for e in g.domain_edges(tree) {
        g.edge_image(tree, e).expect("edge in domain")?;
        let [a, b] = tree.edge(e).endpoints;
        let (s0, s1) = if tree.vertex(a).label == 0 { (a, b) } else { (b, a) };
        let perm = [
            tree.vertex(g.image(s0).expect("in domain")).label as usize,
            tree.vertex(g.image(s1).expect("in domain")).label as usize,
        ];
        let s = permutation_sign(&perm);
        match sign {
            None => sign = Some(s),
            Some(prev) if prev != s => return Err(TreeError::NotLabelCoherent),
            Some(_) => {}
        }
    }
    sign.ok_or(TreeError::EmptyDomain)
}

fn random_element(tree: &TreePair, rng: &mut ChaCha8Rng) -> TreeAutomorphism {
    let interior: Vec<u32> = tree.vertices().iter().filter(|v| v.interior).map(|v| v.id).collect();
    let q_e = tree.q_e() as usize;
    let len = rng.gen_range(1..=4);
    let mut g = TreeAutomorphism::identity(tree);
    for _ in 0..len {
        let step = match rng.gen_range(0..4) {
            0 => TreeAutomorphism::root_swap(tree),
            1 if tree.depth() >= 3 => {
                let steps = rng.gen_range(1..=2);
                TreeAutomorphism::axis_translation(tree, steps).expect("depth allows the translation")
            }
            _ => {
                let v = *interior.choose(rng).expect("root endpoints are interior");
                let mut perm: Vec<usize> = (0..q_e).collect();
                perm.shuffle(rng);
                TreeAutomorphism::child_permutation(tree, v, &perm).expect("valid permutation")
            }
        };
        g = step.compose(&g);
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonSampleReport {
    pub seed: u64,
    pub pairs_checked: usize,
    /// Pairs whose composition had no edge left in its domain.
    pub pairs_skipped: usize,
    pub failures: Vec<String>,
}

impl EpsilonSampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairs_checked >= MIN_SAMPLED_PAIRS
    }
}

/// Checks `eps(g h) = eps(g) eps(h)` on random words in root swaps, child
/// permutations and short axis translations, until `pairs` composable pairs
/// have been checked.
pub fn check_epsilon_homomorphism(tree: &TreePair, seed: u64, pairs: usize) -> EpsilonSampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EpsilonSampleReport { seed, pairs_checked: 0, pairs_skipped: 0, failures: Vec::new() };
    while report.pairs_checked < pairs && report.pairs_skipped < 20 * pairs.max(1) {
        let g = random_element(tree, &mut rng);
        let h = random_element(tree, &mut rng);
        let gh = g.compose(&h);
        let result = (|| -> Result<(i8, i8, i8), TreeError> {
            Ok((epsilon_tree(tree, &g)?, epsilon_tree(tree, &h)?, epsilon_tree(tree, &gh)?))
        })();
        match result {
            Err(TreeError::EmptyDomain) => report.pairs_skipped += 1,
            Err(e) => {
                report.pairs_checked += 1;
                report.failures.push(e.to_string());
            }
            Ok((eg, eh, egh)) => {
                report.pairs_checked += 1;
                if egh != eg * eh {
                    report.failures.push(format!("eps(gh) = {egh}, eps(g) eps(h) = {}", eg * eh));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::build_tree_pair;

    #[test]
    fn identity_and_swap() {
        let t = build_tree_pair(2, 3).unwrap();
        assert_eq!(epsilon_tree(&t, &TreeAutomorphism::identity(&t)).unwrap(), 1);
        let s = TreeAutomorphism::root_swap(&t);
        assert_eq!(epsilon_tree(&t, &s).unwrap(), -1);
        assert!(!s.type_preserving);
        // total on the ball, and an involution
        assert!(t.vertices().iter().all(|v| s.image(v.id).is_some()));
        assert_eq!(s.compose(&s), TreeAutomorphism::identity(&t));
    }

    #[test]
    fn translations() {
        let t = build_tree_pair(2, 4).unwrap();
        let t2 = TreeAutomorphism::axis_translation(&t, 2).unwrap();
        assert_eq!(epsilon_tree(&t, &t2).unwrap(), 1);
        let t1 = TreeAutomorphism::axis_translation(&t, 1).unwrap();
        assert_eq!(epsilon_tree(&t, &t1).unwrap(), -1);
        // the root edge slides two steps along the axis
        let e = t2.edge_image(&t, 0).unwrap().unwrap();
        assert_eq!(t.edge(e).root_distance, 2);
    }

    #[test]
    fn child_permutations_fix_the_root_edge() {
        let t = build_tree_pair(2, 3).unwrap();
        let g = TreeAutomorphism::child_permutation(&t, 0, &[3, 2, 1, 0]).unwrap();
        assert_eq!(g.image(0), Some(0));
        assert_eq!(g.image(1), Some(1));
        assert_eq!(g.image(2), Some(5));
        assert_eq!(epsilon_tree(&t, &g).unwrap(), 1);
        assert!(TreeAutomorphism::child_permutation(&t, 0, &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn incoherent_map_is_rejected() {
        let t = build_tree_pair(2, 2).unwrap();
        let mut g = TreeAutomorphism::identity(&t);
        // swap the root endpoints only: edges at the root flip, others do not map to edges
        g.vertex_map[0] = Some(1);
        g.vertex_map[1] = Some(0);
        assert!(epsilon_tree(&t, &g).is_err());
    }

    #[test]
    fn sampled_homomorphism() {
        let t = build_tree_pair(2, 4).unwrap();
        let r = check_epsilon_homomorphism(&t, 7, MIN_SAMPLED_PAIRS);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r, check_epsilon_homomorphism(&t, 7, MIN_SAMPLED_PAIRS));
    }
}
