//! Contractions between stable A-graphs.
//!
//! A contraction is a surjection on vertices with connected fibers, a
//! bijection between uncollapsed source edges and target edges, additive
//! degrees over fibers and a label-preserving bijection of tails.

mod enumerate;
mod normalize;
mod order;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agraph::{canonical_form_colored, find_isomorphism, relabel_tails, tau, AGraph, CanonicalForm, GraphError, GraphJson, VertexId};

pub use enumerate::{enumerate_nice_contractions, ContractionSet};
pub use normalize::{ends_at_path, normalize_to_path, Relation, WitnessChain, WitnessStep};
pub use order::{equivalence_classes, equivalence_classes_within, leq, leq_with_cap, DEFAULT_VERTEX_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("vertex map has {found} entries, source has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("target vertex {0} has an empty fiber")]
    NotSurjective(VertexId),
    #[error("fiber over target vertex {0} is disconnected")]
    FiberDisconnected(VertexId),
    #[error("target vertex {vertex} has degree {target} but its fiber sums to {fiber}")]
    BetaMismatch { vertex: VertexId, target: u32, fiber: u32 },
    #[error("edge mismatch: {0}")]
    EdgeMismatch(String),
    #[error("tail mismatch: {0}")]
    TailMismatch(String),
    #[error("{0} graph is not stable")]
    Unstable(&'static str),
    #[error("target of the first contraction is not the source of the second")]
    NotComposable,
    #[error("canonical target tau_{r}({e}) is unstable")]
    UnstableTarget { r: usize, e: u32 },
    #[error("contractions have different targets")]
    TargetMismatch,
    #[error("degree bound must be at least 1")]
    BoundTooSmall,
    #[error("source has {vertices} vertices, above the search cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("source has a component of degree other than 1")]
    NotBasic,
    #[error("source has degree-0 vertices")]
    NotDegreeZeroFree,
    #[error("target is not a single tail-free vertex")]
    NotTauZero,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A validated contraction `source → target`.
///
/// `tail_map[l - 1]` is the target label of the source tail labeled `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Contraction {
    source: AGraph,
    target: AGraph,
    vertex_map: Vec<VertexId>,
    tail_map: Vec<u32>,
}

impl Contraction {
    pub fn new(source: AGraph, target: AGraph, vertex_map: Vec<VertexId>, tail_map: Vec<u32>) -> Result<Self, ContractionError> {
        let c = Contraction { source, target, vertex_map, tail_map };
        validate_contraction(&c)?;
        Ok(c)
    }

    /// Builds a contraction whose tails keep their labels.
    pub fn with_identity_tails(source: AGraph, target: AGraph, vertex_map: Vec<VertexId>) -> Result<Self, ContractionError> {
        let tail_map = (1..=source.tail_count() as u32).collect();
        Self::new(source, target, vertex_map, tail_map)
    }

    pub fn identity(g: &AGraph) -> Result<Self, ContractionError> {
        Self::with_identity_tails(g.clone(), g.clone(), (0..g.num_vertices()).collect())
    }

    pub fn source(&self) -> &AGraph {
        &self.source
    }

    pub fn target(&self) -> &AGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn tail_map(&self) -> &[u32] {
        &self.tail_map
    }

    pub fn fiber(&self, w: VertexId) -> Vec<VertexId> {
        (0..self.vertex_map.len()).filter(|&v| self.vertex_map[v] == w).collect()
    }

    /// Fibers over degree-0 target vertices are single degree-0 vertices and
    /// no positive-degree fiber contains a degree-0 vertex; equivalently the
    /// map restricts to an isomorphism of degree-0 subgraphs.
    pub fn is_nice(&self) -> bool {
        (0..self.target.num_vertices()).all(|w| {
            let fiber = self.fiber(w);
            if self.target.beta(w) == 0 {
                fiber.len() == 1
            } else {
                fiber.iter().all(|&v| self.source.beta(v) > 0)
            }
        })
    }

    /// Canonical key of the contraction up to isomorphism of sources that
    /// commutes with the maps to this fixed target.
    pub fn class_key(&self) -> CanonicalForm {
        let relabeled = relabel_tails(&self.source, |l| self.tail_map[(l - 1) as usize])
            .expect("tail_map is a bijection");
        let colors: Vec<u32> = self.vertex_map.iter().map(|&w| w as u32).collect();
        canonical_form_colored(&relabeled, &colors)
    }
}

pub fn validate_contraction(c: &Contraction) -> Result<(), ContractionError> {
    let (s, t) = (&c.source, &c.target);
    if c.vertex_map.len() != s.num_vertices() {
        return Err(ContractionError::LengthMismatch { expected: s.num_vertices(), found: c.vertex_map.len() });
    }
    if !s.is_stable() {
        return Err(ContractionError::Unstable("source"));
    }
    if !t.is_stable() {
        return Err(ContractionError::Unstable("target"));
    }
    if let Some(&w) = c.vertex_map.iter().find(|&&w| w >= t.num_vertices()) {
        return Err(ContractionError::EdgeMismatch(format!("vertex map hits missing target vertex {w}")));
    }
    let mut fiber_beta = vec![0u32; t.num_vertices()];
    let mut fiber_size = vec![0usize; t.num_vertices()];
    for (v, &w) in c.vertex_map.iter().enumerate() {
        fiber_beta[w] += s.beta(v);
        fiber_size[w] += 1;
    }
    if let Some(w) = (0..t.num_vertices()).find(|&w| fiber_size[w] == 0) {
        return Err(ContractionError::NotSurjective(w));
    }
    for w in 0..t.num_vertices() {
        if fiber_beta[w] != t.beta(w) {
            return Err(ContractionError::BetaMismatch { vertex: w, target: t.beta(w), fiber: fiber_beta[w] });
        }
    }

    // Collapsed edges must span each fiber; the rest must biject onto target edges.
    let mut internal = vec![0usize; t.num_vertices()];
    let mut images: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (a, b) in s.edges() {
        let (x, y) = (c.vertex_map[s.boundary(a)], c.vertex_map[s.boundary(b)]);
        if x == y {
            internal[x] += 1;
        } else {
            *images.entry((x.min(y), x.max(y))).or_default() += 1;
        }
    }
    for w in 0..t.num_vertices() {
        // A forest on k vertices with k - 1 edges is a tree.
        if internal[w] + 1 != fiber_size[w] {
            return Err(ContractionError::FiberDisconnected(w));
        }
    }
    let target_edges: BTreeMap<(VertexId, VertexId), usize> = t
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (t.boundary(a), t.boundary(b));
            ((x.min(y), x.max(y)), 1)
        })
        .collect();
    if images != target_edges {
        return Err(ContractionError::EdgeMismatch(format!(
            "source edges map to {:?}, target edges are {:?}",
            images.keys().collect::<Vec<_>>(),
            target_edges.keys().collect::<Vec<_>>()
        )));
    }

    let r = s.tail_count();
    if c.tail_map.len() != r || t.tail_count() != r {
        return Err(ContractionError::TailMismatch(format!(
            "{} source tails, {} target tails, tail map of length {}",
            r,
            t.tail_count(),
            c.tail_map.len()
        )));
    }
    let mut seen = vec![false; r];
    for f in s.tails() {
        let l = s.tail_label(f).expect("tails are labeled");
        let image = c.tail_map[(l - 1) as usize];
        if image == 0 || image as usize > r || std::mem::replace(&mut seen[(image - 1) as usize], true) {
            return Err(ContractionError::TailMismatch(format!("tail map is not a bijection at label {l}")));
        }
        let tf = t.tail_with_label(image).expect("labels are 1..=r");
        if t.boundary(tf) != c.vertex_map[s.boundary(f)] {
            return Err(ContractionError::TailMismatch(format!("tail {l} lands away from its target tail {image}")));
        }
    }
    Ok(())
}

/// `a ∘ e`. The target of `e` and the source of `a` must be equal, or
/// isomorphic, in which case an isomorphism is found and used to transport.
pub fn compose(e: &Contraction, a: &Contraction) -> Result<Contraction, ContractionError> {
    let iso = if e.target == a.source {
        (0..e.target.num_vertices()).collect()
    } else {
        find_isomorphism(&e.target, &a.source).ok_or(ContractionError::NotComposable)?
    };
    let vertex_map = e.vertex_map.iter().map(|&w| a.vertex_map[iso[w]]).collect();
    let tail_map = e.tail_map.iter().map(|&l| a.tail_map[(l - 1) as usize]).collect();
    Contraction::new(e.source.clone(), a.target.clone(), vertex_map, tail_map)
}

/// The contraction of a stable graph onto τ_r(e) collapsing everything.
pub fn canonical_contraction(g: &AGraph) -> Result<Contraction, ContractionError> {
    if !g.is_stable() {
        return Err(ContractionError::Unstable("source"));
    }
    let (r, e) = (g.tail_count(), g.beta_total());
    let target = tau(r as u32, e).map_err(|_| ContractionError::UnstableTarget { r, e })?;
    Contraction::with_identity_tails(g.clone(), target, vec![0; g.num_vertices()])
}

/// `{"source":graph,"target":graph,"vertex_map":{vid:vid},"tail_map":{label:label}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionJson {
    pub source: GraphJson,
    pub target: GraphJson,
    pub vertex_map: BTreeMap<String, String>,
    pub tail_map: BTreeMap<String, u32>,
}

impl ContractionJson {
    pub fn from_contraction(c: &Contraction) -> Self {
        let source = GraphJson::from_graph(&c.source);
        let target = GraphJson::from_graph(&c.target);
        let (sids, tids) = (source.vertex_ids(), target.vertex_ids());
        let vertex_map = c.vertex_map.iter().enumerate().map(|(v, &w)| (sids[v].clone(), tids[w].clone())).collect();
        let tail_map = c.tail_map.iter().enumerate().map(|(i, &l)| ((i + 1).to_string(), l)).collect();
        ContractionJson { source, target, vertex_map, tail_map }
    }

    pub fn to_contraction(&self) -> Result<Contraction, ContractionError> {
        let source = self.source.to_graph()?;
        let target = self.target.to_graph()?;
        let (sids, tids) = (self.source.vertex_ids(), self.target.vertex_ids());
        let mut vertex_map = Vec::with_capacity(sids.len());
        for id in &sids {
            let image = self
                .vertex_map
                .get(id)
                .ok_or_else(|| ContractionError::EdgeMismatch(format!("vertex {id} is not mapped")))?;
            let w = tids
                .iter()
                .position(|t| t == image)
                .ok_or_else(|| ContractionError::EdgeMismatch(format!("vertex {id} maps to unknown {image}")))?;
            vertex_map.push(w);
        }
        let mut tail_map = vec![0; source.tail_count()];
        for (k, &l) in &self.tail_map {
            let i: usize = k.parse().map_err(|_| ContractionError::TailMismatch(format!("bad label key {k}")))?;
            if i == 0 || i > tail_map.len() {
                return Err(ContractionError::TailMismatch(format!("no source tail labeled {i}")));
            }
            tail_map[i - 1] = l;
        }
        Contraction::new(source, target, vertex_map, tail_map)
    }
}

impl Serialize for Contraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ContractionJson::from_contraction(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Contraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ContractionJson::deserialize(d)?.to_contraction().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{path_sigma, star, tau2, GraphBuilder};

    fn to_point(g: &AGraph, e: u32) -> Contraction {
        Contraction::with_identity_tails(g.clone(), tau(0, e).unwrap(), vec![0; g.num_vertices()]).unwrap()
    }

    #[test]
    fn identity_is_valid_and_nice() {
        let id = Contraction::identity(&tau(0, 2).unwrap()).unwrap();
        assert!(id.is_nice());
    }

    #[test]
    fn sigma_two_onto_tau_zero_two() {
        let c = to_point(&path_sigma(2).unwrap(), 2);
        assert!(c.is_nice());
        let bad = Contraction::with_identity_tails(path_sigma(2).unwrap(), tau(0, 3).unwrap(), vec![0, 0]);
        assert!(matches!(bad, Err(ContractionError::BetaMismatch { .. })));
    }

    #[test]
    fn collapsing_a_degree_zero_centre_is_not_nice() {
        let c = to_point(&star(&[1, 1, 1], 0).unwrap(), 3);
        assert!(!c.is_nice());
    }

    #[test]
    fn disconnected_fiber_is_rejected() {
        // path a-b-c onto a 2-vertex graph with a, c collapsed together.
        let src = path_sigma(3).unwrap();
        let tgt = tau2(0, 0, 2, 1).unwrap();
        let err = Contraction::with_identity_tails(src.clone(), tgt.clone(), vec![0, 1, 0]).unwrap_err();
        assert!(matches!(err, ContractionError::FiberDisconnected(0)), "{err}");
        assert!(Contraction::with_identity_tails(src, tgt, vec![0, 0, 1]).is_ok());
    }

    #[test]
    fn edges_must_land_on_edges() {
        // A bijection from the path onto the star sends the last edge between two leaves.
        let src = path_sigma(4).unwrap();
        let tgt = star(&[1, 1, 1], 1).unwrap();
        let err = Contraction::with_identity_tails(src, tgt, vec![1, 0, 2, 3]).unwrap_err();
        assert!(matches!(err, ContractionError::EdgeMismatch(_)), "{err}");
    }

    #[test]
    fn tails_must_follow_vertices() {
        let mut b = GraphBuilder::new();
        let u = b.vertex(1);
        let w = b.vertex(1);
        b.edge(u, w);
        b.tail(u);
        let src = b.build().unwrap();
        let tgt = tau2(1, 0, 1, 1).unwrap();
        assert!(Contraction::with_identity_tails(src.clone(), tgt.clone(), vec![0, 1]).is_ok());
        let err = Contraction::with_identity_tails(src, tgt, vec![1, 0]).unwrap_err();
        assert!(matches!(err, ContractionError::TailMismatch(_)));
    }

    #[test]
    fn composing_through_an_intermediate() {
        let sigma3 = path_sigma(3).unwrap();
        let mid = tau2(0, 0, 2, 1).unwrap();
        let e = Contraction::with_identity_tails(sigma3.clone(), mid.clone(), vec![0, 0, 1]).unwrap();
        let a = to_point(&mid, 3);
        let c = compose(&e, &a).unwrap();
        assert_eq!(c, to_point(&sigma3, 3));
        let id = Contraction::identity(&sigma3).unwrap();
        assert_eq!(compose(&id, &c).unwrap(), c);
        assert_eq!(compose(&a, &e), Err(ContractionError::NotComposable));
    }

    #[test]
    fn composing_across_an_isomorphic_copy() {
        let mid = tau2(0, 0, 2, 1).unwrap();
        let mid_swapped = tau2(0, 0, 1, 2).unwrap();
        let e = Contraction::with_identity_tails(path_sigma(3).unwrap(), mid, vec![0, 0, 1]).unwrap();
        let a = to_point(&mid_swapped, 3);
        assert!(compose(&e, &a).is_ok());
    }

    #[test]
    fn canonical_contractions() {
        let c = canonical_contraction(&path_sigma(2).unwrap()).unwrap();
        assert_eq!(c.target(), &tau(0, 2).unwrap());
        let t = tau(1, 1).unwrap();
        assert_eq!(canonical_contraction(&t).unwrap(), Contraction::identity(&t).unwrap());
        let unstable = AGraph::from_parts(vec![0], vec![0, 0], vec![0, 1], vec![Some(1), Some(2)]).unwrap();
        assert!(canonical_contraction(&unstable).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = canonical_contraction(&star(&[1, 1, 1], 0).unwrap()).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Contraction = serde_json::from_str(&text).unwrap();
        assert_eq!(back.class_key(), c.class_key());
    }
}
