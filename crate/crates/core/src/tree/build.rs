use serde::Serialize;

use super::TreeError;
use crate::period::ResidueSize;

/// Default cap on the number of materialized edges.
pub const DEFAULT_TREE_BUDGET: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: u32,
    /// Bipartition label (vertex type), 0 or 1.
    pub label: u8,
    pub in_f: bool,
    /// All `q_E + 1` neighbours are materialized.
    pub interior: bool,
    /// Neighbour at port 0: towards the root edge, or across it for its endpoints.
    #[serde(skip)]
    pub(crate) parent: u32,
    #[serde(skip)]
    pub(crate) parent_edge: u32,
    /// Children occupy ids `first_child .. first_child + q_E`.
    #[serde(skip)]
    pub(crate) first_child: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: u32,
    /// `[near, far]` relative to the root edge.
    pub endpoints: [u32; 2],
    pub in_f: bool,
    /// Gallery distance to the root edge.
    pub root_distance: u32,
    /// Gallery distance to the nearest edge of `X_F`.
    pub f_distance: u32,
}

/// Truncated tree pair. Vertex `0` and `1` are the endpoints of the root
/// edge `0`; every other vertex `v` is the far endpoint of edge `v - 1`.
#[derive(Debug, Clone, Serialize)]
pub struct TreePair {
    q_f: ResidueSize,
    q_e: u64,
    depth: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

fn edge_count(q_e: u64, depth: usize) -> u128 {
    let mut total: u128 = 1;
    let mut sphere: u128 = 2;
    for _ in 0..depth {
        sphere *= q_e as u128;
        total += sphere;
    }
    total
}

pub fn build_tree_pair(q_f: u64, depth: usize) -> Result<TreePair, TreeError> {
    build_tree_pair_with_budget(q_f, depth, DEFAULT_TREE_BUDGET)
}

/// Grows `X_E` and `X_F` together from the root edge; at an `F`-vertex the
/// first `q_F` of its `q_E` children (in creation order) span `F`-edges.
pub fn build_tree_pair_with_budget(q_f: u64, depth: usize, budget: usize) -> Result<TreePair, TreeError> {
    let q = ResidueSize::new(q_f).map_err(|_| TreeError::UnsupportedResidueSize(q_f))?;
    if q_f > 9 {
        return Err(TreeError::UnsupportedResidueSize(q_f));
    }
    if depth < 1 {
        return Err(TreeError::DepthTooSmall { depth, min: 1 });
    }
    let q_e = q.squared();
    if let Some(fail) = (1..=depth).find(|&l| edge_count(q_e, l) > budget as u128) {
        return Err(TreeError::BudgetExceeded { budget, smallest_failing_depth: fail });
    }
    let n_edges = edge_count(q_e, depth) as usize;

    let mut vertices = Vec::with_capacity(n_edges + 1);
    let mut edges = Vec::with_capacity(n_edges);
    for (id, parent) in [(0u32, 1u32), (1, 0)] {
        vertices.push(Vertex {
            id,
            label: id as u8,
            in_f: true,
            interior: true,
            parent,
            parent_edge: 0,
            first_child: None,
        });
    }
    edges.push(Edge { id: 0, endpoints: [0, 1], in_f: true, root_distance: 0, f_distance: 0 });

    let mut v = 0usize;
    while v < vertices.len() {
        let parent_edge = vertices[v].parent_edge as usize;
        let dist = edges[parent_edge].root_distance;
        if (dist as usize) < depth {
            let first = vertices.len() as u32;
            vertices[v].first_child = Some(first);
            let (label, v_in_f, pe_delta) = (vertices[v].label, vertices[v].in_f, edges[parent_edge].f_distance);
            for i in 0..q_e {
                let w = vertices.len() as u32;
                let e = w - 1;
                let in_f = v_in_f && i < q_f;
                let f_distance = if in_f {
                    0
                } else if v_in_f {
                    1
                } else {
                    pe_delta + 1
                };
                vertices.push(Vertex {
                    id: w,
                    label: 1 - label,
                    in_f,
                    interior: (dist as usize + 1) < depth,
                    parent: v as u32,
                    parent_edge: e,
                    first_child: None,
                });
                edges.push(Edge { id: e, endpoints: [v as u32, w], in_f, root_distance: dist + 1, f_distance });
            }
        }
        v += 1;
    }
    debug_assert_eq!(edges.len(), n_edges);
    Ok(TreePair { q_f: q, q_e, depth, vertices, edges })
}

impl TreePair {
    pub fn q_f(&self) -> u64 {
        self.q_f.get()
    }

    pub fn q_e(&self) -> u64 {
        self.q_e
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: u32) -> &Vertex {
        &self.vertices[v as usize]
    }

    pub fn edge(&self, e: u32) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn root_edge(&self) -> &Edge {
        &self.edges[0]
    }

    /// Neighbour of `v` through `port` (0 = towards the root edge, `1..=q_E` children).
    pub fn neighbor(&self, v: u32, port: usize) -> Option<u32> {
        let vx = &self.vertices[v as usize];
        match port {
            0 => Some(vx.parent),
            p if p as u64 <= self.q_e => vx.first_child.map(|c| c + p as u32 - 1),
            _ => None,
        }
    }

    /// Port of `v` leading to its neighbour `u`.
    pub fn port_towards(&self, v: u32, u: u32) -> Option<usize> {
        let vx = &self.vertices[v as usize];
        if vx.parent == u {
            return Some(0);
        }
        let first = vx.first_child?;
        (u >= first && ((u - first) as u64) < self.q_e).then(|| (u - first) as usize + 1)
    }

    /// Ids of edges incident to `v` (parent edge first, then children).
    pub fn incident_edges(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let vx = &self.vertices[v as usize];
        let children = vx.first_child.map(|c| (c - 1)..(c - 1 + self.q_e as u32)).unwrap_or(0..0);
        std::iter::once(vx.parent_edge).chain(children)
    }

    pub fn edge_between(&self, a: u32, b: u32) -> Option<u32> {
        let (va, vb) = (&self.vertices[a as usize], &self.vertices[b as usize]);
        if va.parent == b {
            Some(va.parent_edge)
        } else if vb.parent == a {
            Some(vb.parent_edge)
        } else {
            None
        }
    }

    /// Edges whose gallery distance to the root edge is `k`.
    pub fn sphere(&self, k: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.root_distance as usize == k)
    }

    pub fn max_f_distance(&self) -> usize {
        self.edges.iter().map(|e| e.f_distance as usize).max().unwrap_or(0)
    }
}
