//! Serialized graph descriptions.
//!
//! Two shapes are accepted: a flag-level [`RawGraph`] that mirrors the
//! definition directly (flags, involution partners, boundary), and the compact
//! [`GraphJson`] exchange format with explicit edges and labeled tails.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_labels, AGraph, GraphError, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFlag {
    pub id: String,
    /// Vertex the flag is attached to.
    pub vertex: String,
    /// Image under the involution; equal to `id` for a tail.
    pub partner: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawGraph {
    #[serde(default)]
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub flags: Vec<RawFlag>,
}

/// Checks a flag-level description and returns the graph, or every violated
/// invariant found. Vertex and flag ids map to indices in listing order.
pub fn validate(raw: &RawGraph) -> Result<AGraph, GraphError> {
    let mut violations = Vec::new();
    let mut vindex = HashMap::new();
    let mut beta = Vec::with_capacity(raw.vertices.len());
    for v in &raw.vertices {
        if vindex.insert(v.id.as_str(), beta.len()).is_some() {
            violations.push(Violation::DuplicateId { id: v.id.clone() });
        }
        if v.beta < 0 {
            violations.push(Violation::NegativeDegree { vertex: v.id.clone() });
        }
        beta.push(v.beta.max(0) as u32);
    }
    let mut findex = HashMap::new();
    for (i, f) in raw.flags.iter().enumerate() {
        if findex.insert(f.id.as_str(), i).is_some() {
            violations.push(Violation::DuplicateId { id: f.id.clone() });
        }
    }
    let mut boundary = Vec::with_capacity(raw.flags.len());
    let mut involution = Vec::with_capacity(raw.flags.len());
    for f in &raw.flags {
        match (vindex.get(f.vertex.as_str()), findex.get(f.partner.as_str())) {
            (Some(&v), Some(&j)) => {
                boundary.push(v);
                involution.push(j);
            }
            _ => {
                violations.push(Violation::DanglingFlag { flag: f.id.clone() });
                boundary.push(0);
                involution.push(0);
            }
        }
    }
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    for (i, f) in raw.flags.iter().enumerate() {
        if involution[involution[i]] != i {
            violations.push(Violation::NonInvolution { flag: f.id.clone() });
        }
    }
    let mut labels = Vec::with_capacity(raw.flags.len());
    for f in &raw.flags {
        match f.label {
            Some(l) if l <= 0 => {
                violations.push(Violation::BadTailLabels { detail: format!("flag {} has label {l}", f.id) });
                labels.push(None);
            }
            l => labels.push(l.map(|x| x as u32)),
        }
    }
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    if let Some(v) = check_labels(
        raw.flags.iter().enumerate().map(|(i, f)| (f.id.clone(), involution[i] == i, labels[i])),
    ) {
        violations.push(v);
    }
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    // Only the tree shape is left to check.
    AGraph::from_parts(beta, boundary, involution, labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVertex {
    pub id: String,
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTail {
    pub at: String,
    pub label: i64,
}

/// `{"vertices":[{"id":..,"beta":..}],"edges":[[u,w]],"tails":[{"at":..,"label":..}]}`
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default)]
    pub vertices: Vec<JsonVertex>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub tails: Vec<JsonTail>,
}

impl GraphJson {
    pub fn to_raw(&self) -> RawGraph {
        let vertices = self.vertices.iter().map(|v| RawVertex { id: v.id.clone(), beta: v.beta }).collect();
        let mut flags = Vec::new();
        for (i, [u, w]) in self.edges.iter().enumerate() {
            let (a, b) = (format!("e{i}a"), format!("e{i}b"));
            flags.push(RawFlag { id: a.clone(), vertex: u.clone(), partner: b.clone(), label: None });
            flags.push(RawFlag { id: b, vertex: w.clone(), partner: a, label: None });
        }
        for (i, t) in self.tails.iter().enumerate() {
            let id = format!("t{i}");
            flags.push(RawFlag { id: id.clone(), vertex: t.at.clone(), partner: id, label: Some(t.label) });
        }
        RawGraph { vertices, flags }
    }

    pub fn to_graph(&self) -> Result<AGraph, GraphError> {
        validate(&self.to_raw())
    }

    /// Vertex ids in the order they were listed; index `i` is vertex `i` of
    /// the graph produced by [`GraphJson::to_graph`].
    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.id.clone()).collect()
    }

    pub fn from_graph(g: &AGraph) -> Self {
        let id = |v: usize| format!("v{v}");
        let vertices = (0..g.num_vertices()).map(|v| JsonVertex { id: id(v), beta: g.beta(v) as i64 }).collect();
        let edges = g.edges().into_iter().map(|(a, b)| [id(g.boundary(a)), id(g.boundary(b))]).collect();
        let mut tails: Vec<JsonTail> = g
            .tails()
            .into_iter()
            .map(|f| JsonTail { at: id(g.boundary(f)), label: g.tail_label(f).unwrap_or(0) as i64 })
            .collect();
        tails.sort_by_key(|t| t.label);
        GraphJson { vertices, edges, tails }
    }

    pub fn parse(s: &str) -> Result<AGraph, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        j.to_graph()
    }
}

impl AGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson::from_graph(self)
    }
}

impl Serialize for AGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?.to_graph().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{canonical_form, star, tau};

    fn raw(vertices: &[(&str, i64)], flags: &[(&str, &str, &str, Option<i64>)]) -> RawGraph {
        RawGraph {
            vertices: vertices.iter().map(|&(id, beta)| RawVertex { id: id.into(), beta }).collect(),
            flags: flags
                .iter()
                .map(|&(id, v, p, l)| RawFlag { id: id.into(), vertex: v.into(), partner: p.into(), label: l })
                .collect(),
        }
    }

    #[test]
    fn empty_description_is_the_empty_graph() {
        assert!(validate(&RawGraph::default()).unwrap().is_empty());
    }

    #[test]
    fn single_vertex_degree_two() {
        let g = validate(&raw(&[("a", 2)], &[])).unwrap();
        assert_eq!(g, tau(0, 2).unwrap());
    }

    #[test]
    fn double_edge_is_rejected() {
        let r = raw(
            &[("a", 1), ("b", 1)],
            &[("f1", "a", "f2", None), ("f2", "b", "f1", None), ("f3", "a", "f4", None), ("f4", "b", "f3", None)],
        );
        let err = validate(&r).unwrap_err();
        assert!(matches!(err.violations()[0], Violation::NotATree { .. }));
    }

    #[test]
    fn violations_name_offenders() {
        let r = raw(&[("a", -1)], &[("f", "zz", "f", Some(1))]);
        let err = validate(&r).unwrap_err();
        assert!(err.violations().contains(&Violation::NegativeDegree { vertex: "a".into() }));
        assert!(err.violations().contains(&Violation::DanglingFlag { flag: "f".into() }));

        let r = raw(&[("a", 1), ("b", 1)], &[("f", "a", "g", None), ("g", "b", "h", None), ("h", "b", "h", Some(1))]);
        let err = validate(&r).unwrap_err();
        assert!(err.violations().contains(&Violation::NonInvolution { flag: "f".into() }));

        let r = raw(&[("a", 1)], &[("t", "a", "t", Some(2))]);
        assert!(matches!(validate(&r).unwrap_err().violations()[0], Violation::BadTailLabels { .. }));
    }

    #[test]
    fn exchange_format_round_trip() {
        let g = star(&[1, 2, 1], 0).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: AGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&g));
        let parsed = GraphJson::parse(r#"{"vertices":[{"id":"x","beta":1}],"tails":[{"at":"x","label":1}]}"#).unwrap();
        assert_eq!(parsed, tau(1, 1).unwrap());
    }
}
