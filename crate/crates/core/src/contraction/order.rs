use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use super::{enumerate::ContractionSet, Contraction, ContractionError};
use crate::agraph::{CanonicalForm, VertexId};

/// Sources above this many vertices are refused by [`leq`].
pub const DEFAULT_VERTEX_CAP: usize = 12;

pub fn leq(a: &Contraction, b: &Contraction) -> Result<Option<Contraction>, ContractionError> {
    leq_with_cap(a, b, DEFAULT_VERTEX_CAP)
}

/// Searches for ε: source(a) → source(b) with `a = b ∘ ε`.
pub fn leq_with_cap(a: &Contraction, b: &Contraction, cap: usize) -> Result<Option<Contraction>, ContractionError> {
    if a.target() != b.target() {
        return Err(ContractionError::TargetMismatch);
    }
    let (s, t) = (a.source(), b.source());
    for n in [s.num_vertices(), t.num_vertices()] {
        if n > cap {
            return Err(ContractionError::CapExceeded { vertices: n, cap });
        }
    }
    if s.num_vertices() < t.num_vertices() || s.tail_count() != t.tail_count() {
        return Ok(None);
    }

    // ε's tail map is forced: b.tail_map ∘ ε_tail = a.tail_map.
    let r = s.tail_count();
    let mut b_inv = vec![0u32; r];
    for (i, &l) in b.tail_map().iter().enumerate() {
        b_inv[(l - 1) as usize] = i as u32 + 1;
    }
    let eps_tails: Vec<u32> = a.tail_map().iter().map(|&l| b_inv[(l - 1) as usize]).collect();

    let mut pinned: Vec<Option<VertexId>> = vec![None; s.num_vertices()];
    for f in s.tails() {
        let l = s.tail_label(f).expect("labeled");
        let tf = t.tail_with_label(eps_tails[(l - 1) as usize]).expect("labels are 1..=r");
        pinned[s.boundary(f)] = Some(t.boundary(tf));
    }

    // Candidates for v lie in b's fiber over a(v).
    let candidates: Vec<Vec<VertexId>> = (0..s.num_vertices())
        .map(|v| match pinned[v] {
            Some(x) if b.vertex_map()[x] == a.vertex_map()[v] => vec![x],
            Some(_) => Vec::new(),
            None => b.fiber(a.vertex_map()[v]),
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }

    let order = bfs_order(&s.adjacency());
    let mut search = Search {
        a,
        b,
        s_adj: s.adjacency(),
        t_adj: t.adjacency(),
        candidates,
        order,
        map: vec![usize::MAX; s.num_vertices()],
        load: vec![0; t.num_vertices()],
        eps_tails,
    };
    Ok(search.run(0))
}

fn bfs_order(adj: &[Vec<VertexId>]) -> Vec<VertexId> {
    if adj.is_empty() {
        return Vec::new();
    }
    let mut seen = vec![false; adj.len()];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &w in &adj[order[i]] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

struct Search<'a> {
    a: &'a Contraction,
    b: &'a Contraction,
    s_adj: Vec<Vec<VertexId>>,
    t_adj: Vec<Vec<VertexId>>,
    candidates: Vec<Vec<VertexId>>,
    order: Vec<VertexId>,
    map: Vec<VertexId>,
    /// Degree already sent to each vertex of b's source.
    load: Vec<u32>,
    eps_tails: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Option<Contraction> {
        if depth == self.order.len() {
            return Contraction::new(
                self.a.source().clone(),
                self.b.source().clone(),
                self.map.clone(),
                self.eps_tails.clone(),
            )
            .ok();
        }
        let v = self.order[depth];
        let beta = self.a.source().beta(v);
        for i in 0..self.candidates[v].len() {
            let x = self.candidates[v][i];
            if self.load[x] + beta > self.b.source().beta(x) {
                continue;
            }
            // Neighbours already placed must land on x or next to it.
            let ok = self.s_adj[v].iter().all(|&u| {
                let y = self.map[u];
                y == usize::MAX || y == x || self.t_adj[x].contains(&y)
            });
            if !ok {
                continue;
            }
            self.map[v] = x;
            self.load[x] += beta;
            if let Some(found) = self.run(depth + 1) {
                return Some(found);
            }
            self.load[x] -= beta;
            self.map[v] = usize::MAX;
        }
        None
    }
}

fn classes_over(pool: &[&Contraction], keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let n = pool.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let linked: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| {
            matches!(leq(pool[i], pool[j]), Ok(Some(_))) || matches!(leq(pool[j], pool[i]), Ok(Some(_)))
        })
        .collect();
    let mut uf = UnionFind::<usize>::new(n);
    for (i, j) in linked {
        uf.union(i, j);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in (0..n).filter(|&i| keep(i)) {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Classes of the closure of ≤ inside `s`, as indices into `s.elements`.
/// Classes are ordered by their least member.
pub fn equivalence_classes(s: &ContractionSet) -> Vec<Vec<usize>> {
    let pool: Vec<&Contraction> = s.elements.iter().collect();
    classes_over(&pool, |_| true)
}

/// Classes of `sub` under the closure of ≤ taken inside `ambient ∪ sub`, so
/// two members of `sub` may be linked through elements outside it. Returned
/// as indices into `sub`.
pub fn equivalence_classes_within(sub: &[Contraction], ambient: &ContractionSet) -> Vec<Vec<usize>> {
    let mut keyed: BTreeMap<CanonicalForm, (&Contraction, Option<usize>)> = BTreeMap::new();
    for c in &ambient.elements {
        keyed.insert(c.class_key(), (c, None));
    }
    for (i, c) in sub.iter().enumerate() {
        keyed.insert(c.class_key(), (c, Some(i)));
    }
    let pool: Vec<&Contraction> = keyed.values().map(|(c, _)| *c).collect();
    let origin: Vec<Option<usize>> = keyed.values().map(|(_, i)| *i).collect();
    let mut classes: Vec<Vec<usize>> = classes_over(&pool, |k| origin[k].is_some())
        .into_iter()
        .map(|g| {
            let mut members: Vec<usize> = g.into_iter().filter_map(|k| origin[k]).collect();
            members.sort_unstable();
            members
        })
        .collect();
    classes.sort_by_key(|g| g[0]);
    classes
}
