//! Decorated trees ("A-graphs"): flags, vertices, an involution on flags,
//! a boundary map flag → vertex, a degree label per vertex and labeled tails.
//!
//! Flags are first-class. Tails are the fixed points of the involution and
//! edges are its 2-orbits; nothing is stored as an adjacency list.

mod canonical;
mod invariants;
mod json;
mod stabilize;
mod standard;
mod surgery;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use canonical::{canonical_form, canonical_form_colored, find_isomorphism, CanonicalForm};
pub use invariants::{invariants, GraphInvariants};
pub use json::{validate, GraphJson, JsonTail, JsonVertex, RawFlag, RawGraph, RawVertex};
pub use stabilize::{forget_tail, remove_tails, stabilize, TailMode};
pub use standard::{path_sigma, star, tau, tau2, StandardKind};
pub use surgery::{break_edge, contract_edge, glue, relabel_tails, split_vertex, EdgeBreak};

pub type VertexId = usize;
pub type FlagId = usize;

/// A single violated invariant found while validating a graph description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonInvolution { flag: String },
    NotATree { reason: String },
    DanglingFlag { flag: String },
    NegativeDegree { vertex: String },
    BadTailLabels { detail: String },
    DuplicateId { id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonInvolution { flag } => write!(f, "involution is not an involution at flag {flag}"),
            Violation::NotATree { reason } => write!(f, "not a tree: {reason}"),
            Violation::DanglingFlag { flag } => write!(f, "flag {flag} refers to a missing vertex or flag"),
            Violation::NegativeDegree { vertex } => write!(f, "vertex {vertex} has negative degree"),
            Violation::BadTailLabels { detail } => write!(f, "bad tail labels: {detail}"),
            Violation::DuplicateId { id } => write!(f, "duplicate id {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("stabilization of a nonempty graph is empty")]
    Unstabilizable,
    #[error("flag {0} is not half of an edge")]
    NotAnEdge(FlagId),
    #[error("flag {0} is not a tail")]
    NotATail(FlagId),
    #[error("no tail carries label {0}")]
    NoSuchTail(u32),
    #[error("requested graph {0} is unstable")]
    UnstableRequest(String),
    #[error("vertex {0} out of range")]
    NoSuchVertex(VertexId),
    #[error("json: {0}")]
    Json(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl GraphError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            GraphError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// A validated genus-0 A-graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AGraph {
    beta: Vec<u32>,
    boundary: Vec<VertexId>,
    involution: Vec<FlagId>,
    labels: Vec<Option<u32>>,
}

impl fmt::Debug for AGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AGraph {{ beta: {:?}, edges: [", self.beta)?;
        for (i, (a, b)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", self.boundary[a], self.boundary[b])?;
        }
        write!(f, "], tails: [")?;
        for (i, t) in self.tails().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}@{}", self.labels[t].unwrap_or(0), self.boundary[t])?;
        }
        write!(f, "] }}")
    }
}

impl AGraph {
    /// The empty graph τ_∅.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from its flag-level data and checks every invariant.
    pub fn from_parts(
        beta: Vec<u32>,
        boundary: Vec<VertexId>,
        involution: Vec<FlagId>,
        labels: Vec<Option<u32>>,
    ) -> Result<Self, GraphError> {
        let g = AGraph { beta, boundary, involution, labels };
        let violations = g.check();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let nf = self.boundary.len();
        let nv = self.beta.len();
        if self.involution.len() != nf || self.labels.len() != nf {
            out.push(Violation::DanglingFlag { flag: format!("(flag arrays have lengths {}, {}, {})", nf, self.involution.len(), self.labels.len()) });
            return out;
        }
        for f in 0..nf {
            if self.boundary[f] >= nv {
                out.push(Violation::DanglingFlag { flag: f.to_string() });
            }
            let j = self.involution[f];
            if j >= nf {
                out.push(Violation::DanglingFlag { flag: f.to_string() });
            } else if self.involution[j] != f {
                out.push(Violation::NonInvolution { flag: f.to_string() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        if let Some(v) = check_labels(self.labels.iter().enumerate().map(|(f, l)| (f.to_string(), self.involution[f] == f, *l))) {
            out.push(v);
        }
        if let Some(v) = self.tree_violation() {
            out.push(v);
        }
        out
    }

    fn tree_violation(&self) -> Option<Violation> {
        let nv = self.beta.len();
        if nv == 0 {
            return None;
        }
        let ne = self.edge_count();
        if ne + 1 != nv {
            return Some(Violation::NotATree { reason: format!("{ne} edges on {nv} vertices") });
        }
        let seen = self.component_of(0, None);
        if seen.iter().filter(|&&s| s).count() != nv {
            return Some(Violation::NotATree { reason: "disconnected".into() });
        }
        None
    }

    /// Vertices reachable from `start`, optionally refusing to cross the edge containing `cut`.
    pub(crate) fn component_of(&self, start: VertexId, cut: Option<FlagId>) -> Vec<bool> {
        let adjacency = self.flag_lists();
        let mut seen = vec![false; self.beta.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &f in &adjacency[v] {
                let j = self.involution[f];
                if j == f || cut.is_some_and(|c| c == f || c == j) {
                    continue;
                }
                let w = self.boundary[j];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn num_vertices(&self) -> usize {
        self.beta.len()
    }

    pub fn num_flags(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn beta(&self, v: VertexId) -> u32 {
        self.beta[v]
    }

    pub fn betas(&self) -> &[u32] {
        &self.beta
    }

    pub fn beta_total(&self) -> u32 {
        self.beta.iter().sum()
    }

    /// Maximum component degree E(τ); 0 for the empty graph.
    pub fn max_degree(&self) -> u32 {
        self.beta.iter().copied().max().unwrap_or(0)
    }

    pub fn boundary(&self, f: FlagId) -> VertexId {
        self.boundary[f]
    }

    pub fn partner(&self, f: FlagId) -> FlagId {
        self.involution[f]
    }

    pub fn is_tail(&self, f: FlagId) -> bool {
        self.involution[f] == f
    }

    pub fn tail_label(&self, f: FlagId) -> Option<u32> {
        self.labels[f]
    }

    pub fn tails(&self) -> Vec<FlagId> {
        (0..self.num_flags()).filter(|&f| self.is_tail(f)).collect()
    }

    pub fn tail_count(&self) -> usize {
        self.involution.iter().enumerate().filter(|&(f, &j)| f == j).count()
    }

    /// Edges as flag pairs `(f, j(f))` with `f < j(f)`, in flag order.
    pub fn edges(&self) -> Vec<(FlagId, FlagId)> {
        (0..self.num_flags())
            .filter_map(|f| {
                let j = self.involution[f];
                (f < j).then_some((f, j))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.involution.iter().enumerate().filter(|&(f, &j)| f < j).count()
    }

    pub fn tail_with_label(&self, label: u32) -> Option<FlagId> {
        (0..self.num_flags()).find(|&f| self.is_tail(f) && self.labels[f] == Some(label))
    }

    pub fn flags_at(&self, v: VertexId) -> Vec<FlagId> {
        (0..self.num_flags()).filter(|&f| self.boundary[f] == v).collect()
    }

    pub(crate) fn flag_lists(&self) -> Vec<Vec<FlagId>> {
        let mut lists = vec![Vec::new(); self.num_vertices()];
        for (f, &v) in self.boundary.iter().enumerate() {
            lists[v].push(f);
        }
        lists
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.boundary.iter().filter(|&&w| w == v).count()
    }

    /// Neighbouring vertices of `v` with the flag at `v` leading to each.
    pub fn neighbors(&self, v: VertexId) -> Vec<(FlagId, VertexId)> {
        self.flags_at(v)
            .into_iter()
            .filter(|&f| !self.is_tail(f))
            .map(|f| (f, self.boundary[self.involution[f]]))
            .collect()
    }

    /// Vertex adjacency lists, ignoring tails.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (a, b) in self.edges() {
            let (u, w) = (self.boundary[a], self.boundary[b]);
            adj[u].push(w);
            adj[w].push(u);
        }
        adj
    }

    pub fn tail_labels_at(&self, v: VertexId) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.num_flags())
            .filter(|&f| self.boundary[f] == v && self.is_tail(f))
            .filter_map(|f| self.labels[f])
            .collect();
        out.sort_unstable();
        out
    }

    /// Every vertex with β = 0 has valence at least 3.
    pub fn is_stable(&self) -> bool {
        let mut valence = vec![0usize; self.num_vertices()];
        for &v in &self.boundary {
            valence[v] += 1;
        }
        self.beta.iter().zip(&valence).all(|(&b, &val)| b > 0 || val >= 3)
    }

    /// The vertices of a path between `from` and `to`, inclusive.
    pub fn path_between(&self, from: VertexId, to: VertexId) -> Vec<VertexId> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.num_vertices()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    pub(crate) fn raw_parts(&self) -> RawParts<'_> {
        (&self.beta, &self.boundary, &self.involution, &self.labels)
    }
}

/// Tail labels must form a bijection onto `1..=r`; non-tails carry no label.
pub(crate) fn check_labels(flags: impl Iterator<Item = (String, bool, Option<u32>)>) -> Option<Violation> {
    let mut seen = BTreeSet::new();
    let mut tails = 0u32;
    for (name, is_tail, label) in flags {
        match (is_tail, label) {
            (true, Some(l)) => {
                tails += 1;
                if !seen.insert(l) {
                    return Some(Violation::BadTailLabels { detail: format!("label {l} repeated (flag {name})") });
                }
            }
            (true, None) => return Some(Violation::BadTailLabels { detail: format!("tail {name} has no label") }),
            (false, Some(l)) => {
                return Some(Violation::BadTailLabels { detail: format!("edge flag {name} carries label {l}") })
            }
            (false, None) => {}
        }
    }
    if seen.iter().copied().ne(1..=tails) {
        return Some(Violation::BadTailLabels { detail: format!("labels {seen:?} are not 1..={tails}") });
    }
    None
}

/// Borrowed (β, ∂, j, labels) arrays.
pub(crate) type RawParts<'a> = (&'a [u32], &'a [VertexId], &'a [FlagId], &'a [Option<u32>]);

/// Incremental construction helper used throughout the crate and its tests.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    beta: Vec<u32>,
    boundary: Vec<VertexId>,
    involution: Vec<FlagId>,
    labels: Vec<Option<u32>>,
    next_label: u32,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, beta: u32) -> VertexId {
        self.beta.push(beta);
        self.beta.len() - 1
    }

    pub fn edge(&mut self, u: VertexId, w: VertexId) -> (FlagId, FlagId) {
        let f = self.boundary.len();
        self.boundary.extend([u, w]);
        self.involution.extend([f + 1, f]);
        self.labels.extend([None, None]);
        (f, f + 1)
    }

    /// Adds a tail with the next unused label.
    pub fn tail(&mut self, v: VertexId) -> FlagId {
        self.next_label += 1;
        self.labeled_tail(v, self.next_label)
    }

    pub fn labeled_tail(&mut self, v: VertexId, label: u32) -> FlagId {
        let f = self.boundary.len();
        self.boundary.push(v);
        self.involution.push(f);
        self.labels.push(Some(label));
        self.next_label = self.next_label.max(label);
        f
    }

    pub fn build(self) -> Result<AGraph, GraphError> {
        AGraph::from_parts(self.beta, self.boundary, self.involution, self.labels)
    }
}
