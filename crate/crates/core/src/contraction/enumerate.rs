use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::{Contraction, ContractionError};
use crate::agraph::{canonical_form, split_vertex, AGraph, CanonicalForm, FlagId, VertexId};

/// Nice contractions onto a fixed target with source degrees bounded by `bound`,
/// one per isomorphism class over the target, sorted by class key.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionSet {
    pub target: AGraph,
    pub bound: u32,
    pub elements: Vec<Contraction>,
}

impl ContractionSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements whose sources have every degree at most 1.
    pub fn basic(&self) -> Vec<Contraction> {
        self.elements.iter().filter(|c| c.source().max_degree() <= 1).cloned().collect()
    }
}

/// All trees of positive-degree vertices summing to `beta` that carry `ports`
/// labeled tails, up to label-preserving isomorphism.
fn local_refinements(beta: u32, ports: usize) -> Vec<AGraph> {
    let tails: Vec<VertexId> = vec![0; ports];
    let labels = (1..=ports as u32).map(Some).collect();
    let seed = AGraph::from_parts(vec![beta], tails, (0..ports).collect(), labels).expect("single vertex");
    if beta == 0 {
        return vec![seed];
    }
    let mut seen = HashSet::from([canonical_form(&seed)]);
    let mut frontier = vec![seed.clone()];
    let mut out = vec![seed];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for v in 0..g.num_vertices() {
                let flags = g.flags_at(v);
                for moved_beta in 1..g.beta(v) {
                    for mask in 0u32..(1 << flags.len()) {
                        let moved: Vec<FlagId> =
                            flags.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &f)| f).collect();
                        let (h, _) = split_vertex(g, v, moved_beta, &moved).expect("valid split");
                        if seen.insert(canonical_form(&h)) {
                            next.push(h.clone());
                            out.push(h);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Replaces every target vertex by a chosen local tree and wires the ports
/// (local tails) to the target flags they stand for.
fn assemble(target: &AGraph, locals: &[&AGraph]) -> Result<Contraction, ContractionError> {
    let nt = target.num_flags();
    let mut beta = Vec::new();
    let mut vertex_map = Vec::new();
    let mut boundary = vec![0; nt];
    let mut involution: Vec<FlagId> = (0..nt).map(|f| target.partner(f)).collect();
    let mut labels: Vec<Option<u32>> = (0..nt).map(|f| target.tail_label(f)).collect();
    for (w, local) in locals.iter().enumerate() {
        let off = beta.len();
        beta.extend_from_slice(local.betas());
        vertex_map.extend(std::iter::repeat_n(w, local.num_vertices()));
        let ports = target.flags_at(w);
        for t in local.tails() {
            let label = local.tail_label(t).expect("ports are labeled");
            boundary[ports[(label - 1) as usize]] = off + local.boundary(t);
        }
        for (a, b) in local.edges() {
            let f = boundary.len();
            boundary.extend([off + local.boundary(a), off + local.boundary(b)]);
            involution.extend([f + 1, f]);
            labels.extend([None, None]);
        }
    }
    let source = AGraph::from_parts(beta, boundary, involution, labels)?;
    Contraction::with_identity_tails(source, target.clone(), vertex_map)
}

pub fn enumerate_nice_contractions(target: &AGraph, bound: u32) -> Result<ContractionSet, ContractionError> {
    if bound < 1 {
        return Err(ContractionError::BoundTooSmall);
    }
    if !target.is_stable() {
        return Err(ContractionError::Unstable("target"));
    }
    let mut cache: HashMap<(u32, usize), Vec<AGraph>> = HashMap::new();
    let mut choices: Vec<Vec<AGraph>> = Vec::with_capacity(target.num_vertices());
    for w in 0..target.num_vertices() {
        let key = (target.beta(w), target.valence(w));
        let all = cache.entry(key).or_insert_with(|| local_refinements(key.0, key.1));
        choices.push(all.iter().filter(|g| g.max_degree() <= bound).cloned().collect());
    }

    let mut elements: BTreeMap<CanonicalForm, Contraction> = BTreeMap::new();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(ContractionSet { target: target.clone(), bound, elements: Vec::new() });
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let picked: Vec<&AGraph> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
        let c = assemble(target, &picked)?;
        elements.entry(c.class_key()).or_insert(c);
        // Odometer over the per-vertex choices.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(ContractionSet { target: target.clone(), bound, elements: elements.into_values().collect() });
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{path_sigma, star, tau, tau2};

    fn sources(s: &ContractionSet) -> Vec<CanonicalForm> {
        let mut v: Vec<_> = s.elements.iter().map(|c| canonical_form(c.source())).collect();
        v.sort();
        v
    }

    #[test]
    fn degree_two_point() {
        let t = tau(0, 2).unwrap();
        let s1 = enumerate_nice_contractions(&t, 1).unwrap();
        assert_eq!(sources(&s1), vec![canonical_form(&path_sigma(2).unwrap())]);
        let s2 = enumerate_nice_contractions(&t, 2).unwrap();
        assert_eq!(s2.len(), 2);
        assert!(s2.elements.iter().any(|c| c.source() == &t));
    }

    #[test]
    fn degree_four_point_with_bound_one() {
        let s = enumerate_nice_contractions(&tau(0, 4).unwrap(), 1).unwrap();
        let mut want = vec![canonical_form(&path_sigma(4).unwrap()), canonical_form(&star(&[1, 1, 1], 1).unwrap())];
        want.sort();
        assert_eq!(sources(&s), want);
    }

    #[test]
    fn tails_distinguish_refinements() {
        // Two ways to put tail 1 on σ_2 collapse to one, but with two tails
        // the tails can sit together or apart (and apart is symmetric).
        let s = enumerate_nice_contractions(&tau(1, 2).unwrap(), 1).unwrap();
        assert_eq!(s.len(), 1);
        let s = enumerate_nice_contractions(&tau(2, 2).unwrap(), 1).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn degree_zero_vertices_are_kept() {
        let t = star(&[1, 1, 2], 0).unwrap();
        let s = enumerate_nice_contractions(&t, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.elements.iter().all(|c| c.is_nice()));
    }

    #[test]
    fn ports_over_an_edge() {
        // τ2(0,0,2,1): the edge port can sit on either vertex of the σ_2 over
        // the degree-2 end, but those are isomorphic over the target.
        let s = enumerate_nice_contractions(&tau2(0, 0, 2, 1).unwrap(), 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(canonical_form(s.elements[0].source()), canonical_form(&path_sigma(3).unwrap()));
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert_eq!(enumerate_nice_contractions(&tau(0, 2).unwrap(), 0).unwrap_err(), ContractionError::BoundTooSmall);
    }
}
