//! Cutting, gluing, contracting and splitting.

use super::{AGraph, FlagId, GraphError, VertexId};

/// The two halves of a graph cut along one edge.
///
/// `*_labels[i]` records the original label of the tail now labeled `i + 1`
/// (the cut flag itself is the last label on each side and is not listed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBreak {
    pub first: AGraph,
    pub first_tail: FlagId,
    pub first_labels: Vec<u32>,
    pub second: AGraph,
    pub second_tail: FlagId,
    pub second_labels: Vec<u32>,
}

impl EdgeBreak {
    /// Glues the halves back and restores the original tail labels.
    pub fn reglue(&self) -> Result<AGraph, GraphError> {
        let glued = glue(&self.first, self.first_tail, &self.second, self.second_tail)?;
        let a = self.first_labels.len() as u32;
        relabel_tails(&glued, |l| {
            if l <= a {
                self.first_labels[(l - 1) as usize]
            } else {
                self.second_labels[(l - a - 1) as usize]
            }
        })
    }
}

fn extract(g: &AGraph, side: &[bool], cut: FlagId) -> (AGraph, FlagId, Vec<u32>) {
    let (beta, boundary, involution, labels) = g.raw_parts();
    let mut vmap = vec![usize::MAX; beta.len()];
    let mut new_beta = Vec::new();
    for v in 0..beta.len() {
        if side[v] {
            vmap[v] = new_beta.len();
            new_beta.push(beta[v]);
        }
    }
    let flags: Vec<FlagId> = (0..boundary.len()).filter(|&f| side[boundary[f]]).collect();
    let mut fmap = vec![usize::MAX; boundary.len()];
    for (i, &f) in flags.iter().enumerate() {
        fmap[f] = i;
    }
    let mut old_labels: Vec<u32> =
        flags.iter().filter(|&&f| involution[f] == f).filter_map(|&f| labels[f]).collect();
    old_labels.sort_unstable();
    let relabel = |l: u32| old_labels.binary_search(&l).expect("present") as u32 + 1;
    let cut_label = old_labels.len() as u32 + 1;
    let mut new_boundary = Vec::with_capacity(flags.len());
    let mut new_involution = Vec::with_capacity(flags.len());
    let mut new_labels = Vec::with_capacity(flags.len());
    for &f in &flags {
        new_boundary.push(vmap[boundary[f]]);
        if f == cut {
            new_involution.push(fmap[f]);
            new_labels.push(Some(cut_label));
        } else {
            new_involution.push(fmap[involution[f]]);
            new_labels.push(labels[f].map(relabel));
        }
    }
    let graph = AGraph { beta: new_beta, boundary: new_boundary, involution: new_involution, labels: new_labels };
    (graph, fmap[cut], old_labels)
}

/// Cuts the edge containing `f1`. Each half gets the cut flag as a new tail
/// labeled after its existing tails.
pub fn break_edge(g: &AGraph, f1: FlagId) -> Result<EdgeBreak, GraphError> {
    if f1 >= g.num_flags() || g.is_tail(f1) {
        return Err(GraphError::NotAnEdge(f1));
    }
    let f2 = g.partner(f1);
    let side = g.component_of(g.boundary(f1), Some(f1));
    let other: Vec<bool> = side.iter().map(|s| !s).collect();
    let (first, first_tail, first_labels) = extract(g, &side, f1);
    let (second, second_tail, second_labels) = extract(g, &other, f2);
    Ok(EdgeBreak { first, first_tail, first_labels, second, second_tail, second_labels })
}

/// Joins two graphs by pairing tail `t1` of `g1` with tail `t2` of `g2`.
/// Remaining tails are numbered `g1`'s first, then `g2`'s, each in label order.
pub fn glue(g1: &AGraph, t1: FlagId, g2: &AGraph, t2: FlagId) -> Result<AGraph, GraphError> {
    if t1 >= g1.num_flags() || !g1.is_tail(t1) {
        return Err(GraphError::NotATail(t1));
    }
    if t2 >= g2.num_flags() || !g2.is_tail(t2) {
        return Err(GraphError::NotATail(t2));
    }
    let (voff, foff) = (g1.num_vertices(), g1.num_flags());
    let mut beta = g1.beta.clone();
    beta.extend(&g2.beta);
    let mut boundary = g1.boundary.clone();
    boundary.extend(g2.boundary.iter().map(|v| v + voff));
    let mut involution = g1.involution.clone();
    involution.extend(g2.involution.iter().map(|f| f + foff));
    involution[t1] = t2 + foff;
    involution[t2 + foff] = t1;

    let kept = |g: &AGraph, t: FlagId| {
        let mut l: Vec<u32> = g.tails().into_iter().filter(|&f| f != t).filter_map(|f| g.labels[f]).collect();
        l.sort_unstable();
        l
    };
    let (k1, k2) = (kept(g1, t1), kept(g2, t2));
    let a = k1.len() as u32;
    let mut labels: Vec<Option<u32>> = Vec::with_capacity(boundary.len());
    for f in 0..g1.num_flags() {
        labels.push(if f == t1 { None } else { g1.labels[f].map(|l| k1.binary_search(&l).unwrap() as u32 + 1) });
    }
    for f in 0..g2.num_flags() {
        labels.push(if f == t2 { None } else { g2.labels[f].map(|l| a + k2.binary_search(&l).unwrap() as u32 + 1) });
    }
    AGraph::from_parts(beta, boundary, involution, labels)
}

/// Applies `map` to every tail label; the result must again be `1..=r`.
pub fn relabel_tails(g: &AGraph, map: impl Fn(u32) -> u32) -> Result<AGraph, GraphError> {
    let labels = g.labels.iter().map(|l| l.map(&map)).collect();
    AGraph::from_parts(g.beta.clone(), g.boundary.clone(), g.involution.clone(), labels)
}

/// Collapses the edge containing `f` into its endpoint `∂f`. Returns the new
/// graph and the induced vertex map old → new.
pub fn contract_edge(g: &AGraph, f: FlagId) -> Result<(AGraph, Vec<VertexId>), GraphError> {
    if f >= g.num_flags() || g.is_tail(f) {
        return Err(GraphError::NotAnEdge(f));
    }
    let j = g.partner(f);
    let (keep, gone) = (g.boundary(f), g.boundary(j));
    let mut vmap = vec![usize::MAX; g.num_vertices()];
    let mut beta = Vec::with_capacity(g.num_vertices() - 1);
    for v in 0..g.num_vertices() {
        if v != gone {
            vmap[v] = beta.len();
            beta.push(g.beta(v));
        }
    }
    vmap[gone] = vmap[keep];
    beta[vmap[keep]] += g.beta(gone);

    let live: Vec<FlagId> = (0..g.num_flags()).filter(|&x| x != f && x != j).collect();
    let mut fmap = vec![usize::MAX; g.num_flags()];
    for (i, &x) in live.iter().enumerate() {
        fmap[x] = i;
    }
    let boundary = live.iter().map(|&x| vmap[g.boundary(x)]).collect();
    let involution = live.iter().map(|&x| fmap[g.partner(x)]).collect();
    let labels = live.iter().map(|&x| g.labels[x]).collect();
    let out = AGraph::from_parts(beta, boundary, involution, labels)?;
    Ok((out, vmap))
}

/// Splits vertex `v`: a new vertex (appended last) takes degree `moved_beta`
/// and the flags in `moved`, joined to `v` by a new edge. The result is not
/// required to be stable.
pub fn split_vertex(g: &AGraph, v: VertexId, moved_beta: u32, moved: &[FlagId]) -> Result<(AGraph, VertexId), GraphError> {
    if v >= g.num_vertices() {
        return Err(GraphError::NoSuchVertex(v));
    }
    assert!(moved_beta <= g.beta(v), "cannot move more degree than the vertex has");
    let w = g.num_vertices();
    let mut beta = g.beta.clone();
    beta[v] -= moved_beta;
    beta.push(moved_beta);
    let mut boundary = g.boundary.clone();
    for &f in moved {
        assert_eq!(boundary[f], v, "moved flag must sit at the split vertex");
        boundary[f] = w;
    }
    let a = boundary.len();
    boundary.extend([v, w]);
    let mut involution = g.involution.clone();
    involution.extend([a + 1, a]);
    let mut labels = g.labels.clone();
    labels.extend([None, None]);
    Ok((AGraph::from_parts(beta, boundary, involution, labels)?, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{canonical_form, path_sigma, tau, tau2, GraphBuilder};

    #[test]
    fn breaking_sigma_two() {
        let g = path_sigma(2).unwrap();
        let b = break_edge(&g, 0).unwrap();
        let t = canonical_form(&tau(1, 1).unwrap());
        assert_eq!(canonical_form(&b.first), t);
        assert_eq!(canonical_form(&b.second), t);
        assert!(b.first.is_tail(b.first_tail));
    }

    #[test]
    fn breaking_tau22_gives_two_three_tailed_vertices() {
        let g = tau2(2, 2, 1, 1).unwrap();
        let (f, _) = g.edges()[0];
        let b = break_edge(&g, f).unwrap();
        for half in [&b.first, &b.second] {
            assert_eq!(half.num_vertices(), 1);
            assert_eq!(half.tail_count(), 3);
            assert_eq!(half.beta(0), 1);
        }
        assert_eq!(b.first_labels, vec![1, 2]);
        assert_eq!(b.second_labels, vec![3, 4]);
        assert_eq!(b.reglue().unwrap().tail_labels_at(0), g.tail_labels_at(0));
    }

    #[test]
    fn tails_are_not_edges() {
        let g = tau(1, 1).unwrap();
        assert_eq!(break_edge(&g, 0), Err(GraphError::NotAnEdge(0)));
    }

    #[test]
    fn gluing_two_one_tailed_vertices() {
        let t = tau(1, 1).unwrap();
        let g = glue(&t, 0, &t, 0).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&path_sigma(2).unwrap()));
    }

    #[test]
    fn gluing_onto_a_trivalent_vertex() {
        let g = glue(&tau(1, 2).unwrap(), 0, &tau(3, 0).unwrap(), 1).unwrap();
        assert_eq!(g.betas(), &[2, 0]);
        assert_eq!(g.valence(1), 3);
        assert!(g.is_stable());
        assert_eq!(g.tail_count(), 2);
    }

    #[test]
    fn glue_requires_tails() {
        let g = path_sigma(2).unwrap();
        let t = tau(1, 1).unwrap();
        assert_eq!(glue(&g, 0, &t, 0), Err(GraphError::NotATail(0)));
    }

    #[test]
    fn contracting_and_splitting_are_inverse_up_to_iso() {
        let mut b = GraphBuilder::new();
        let u = b.vertex(1);
        let w = b.vertex(2);
        b.edge(u, w);
        b.tail(w);
        let g = b.build().unwrap();
        let (c, vmap) = contract_edge(&g, 0).unwrap();
        assert_eq!(c.betas(), &[3]);
        assert_eq!(vmap, vec![0, 0]);
        let (s, new) = split_vertex(&c, 0, 2, &[0]).unwrap();
        assert_eq!(new, 1);
        assert_eq!(canonical_form(&s), canonical_form(&g));
    }
}
