use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use super::{expected_dim, strata, StrataError, TargetDescriptor};
use crate::agraph::{canonical_form, contract_edge, AGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetNode {
    /// Canonical form in hex.
    pub id: String,
    pub graph: AGraph,
    pub dim: Option<i64>,
    pub codim: usize,
}

/// Strata with covering edges `coarse → fine`, one per single-edge collapse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Poset {
    pub nodes: Vec<PosetNode>,
    pub edges: Vec<(usize, usize)>,
}

pub fn stratification_poset(r: u32, e: u32, x: Option<&TargetDescriptor>) -> Result<Poset, StrataError> {
    let strata = strata(r, e, x)?;
    let ids: Vec<String> = strata.iter().map(|s| canonical_form(&s.graph).to_hex()).collect();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
    let mut edges = Vec::new();
    for (fine, s) in strata.iter().enumerate() {
        let mut parents: Vec<usize> = s
            .graph
            .edges()
            .into_iter()
            .map(|(f, _)| {
                let (coarse, _) = contract_edge(&s.graph, f).expect("edge");
                index[canonical_form(&coarse).to_hex().as_str()]
            })
            .collect();
        parents.sort_unstable();
        parents.dedup();
        edges.extend(parents.into_iter().map(|p| (p, fine)));
    }
    edges.sort_unstable();
    let nodes = strata
        .into_iter()
        .zip(ids)
        .map(|(s, id)| PosetNode { id, dim: s.expected_dim, codim: s.codim_in_main, graph: s.graph })
        .collect();
    Ok(Poset { nodes, edges })
}

impl Poset {
    /// Nodes with no incoming edge.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| !self.edges.iter().any(|&(_, to)| to == i)).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=TB;\n");
        for n in &self.nodes {
            let betas: Vec<String> = n.graph.betas().iter().map(u32::to_string).collect();
            let mut label = format!("beta [{}], codim {}", betas.join(","), n.codim);
            if let Some(d) = n.dim {
                write!(label, ", dim {d}").unwrap();
            }
            writeln!(out, "  \"{}\" [label=\"{}\"];", n.id, label).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  \"{}\" -> \"{}\";", self.nodes[a].id, self.nodes[b].id).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Expected dimension drop along every edge, for checking.
pub fn dimension_steps(p: &Poset, x: &TargetDescriptor) -> Vec<i64> {
    p.edges
        .iter()
        .map(|&(a, b)| expected_dim(x, &p.nodes[a].graph) - expected_dim(x, &p.nodes[b].graph))
        .collect()
}
