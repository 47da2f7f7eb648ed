use std::collections::VecDeque;

use serde::Serialize;

use super::{AGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    pub beta_total: u32,
    pub max_component_degree: u32,
    pub n_tails: usize,
    pub n_edges: usize,
    pub n_vertices: usize,
    /// Number of vertices on a longest path.
    pub diameter: usize,
    /// Vertices of the degree-0 subgraph τ⁰.
    pub degree_zero_vertex_set: Vec<VertexId>,
}

pub fn invariants(g: &AGraph) -> GraphInvariants {
    GraphInvariants {
        beta_total: g.beta_total(),
        max_component_degree: g.max_degree(),
        n_tails: g.tail_count(),
        n_edges: g.edge_count(),
        n_vertices: g.num_vertices(),
        diameter: diameter(g),
        degree_zero_vertex_set: (0..g.num_vertices()).filter(|&v| g.beta(v) == 0).collect(),
    }
}

/// Vertex count of a longest path, by the double-sweep BFS.
pub(crate) fn diameter(g: &AGraph) -> usize {
    if g.is_empty() {
        return 0;
    }
    let adj = g.adjacency();
    let (far, _) = farthest(&adj, 0);
    let (_, dist) = farthest(&adj, far);
    dist + 1
}

fn farthest(adj: &[Vec<VertexId>], from: VertexId) -> (VertexId, usize) {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    let mut best = (from, 0);
    while let Some(v) = queue.pop_front() {
        if dist[v] > best.1 || (dist[v] == best.1 && v < best.0) {
            best = (v, dist[v]);
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    best
}
