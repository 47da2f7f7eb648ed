use serde::{Deserialize, Serialize};

use super::{compose, Contraction, ContractionError};
use crate::agraph::{canonical_form, contract_edge, path_sigma, split_vertex, AGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Leq,
    #[serde(rename = ">=")]
    Geq,
}

/// One link `nodes[i] R nodes[i+1]`. For `Leq` the witness runs from the
/// source of `nodes[i]` to that of `nodes[i+1]`; for `Geq` the other way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub dir: Relation,
    pub witness: Contraction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessChain {
    pub nodes: Vec<Contraction>,
    pub steps: Vec<WitnessStep>,
}

impl WitnessChain {
    pub fn start(&self) -> &Contraction {
        &self.nodes[0]
    }

    pub fn end(&self) -> &Contraction {
        self.nodes.last().expect("a chain has at least one node")
    }

    /// Number of contract-then-split moves (each is a `<=` followed by `>=`).
    pub fn moves(&self) -> usize {
        self.steps.len() / 2
    }

    /// Checks every composition identity exactly.
    pub fn verify(&self) -> Result<(), ContractionError> {
        if self.nodes.len() != self.steps.len() + 1 {
            return Err(ContractionError::NotComposable);
        }
        for (i, step) in self.steps.iter().enumerate() {
            let (lo, hi) = match step.dir {
                Relation::Leq => (&self.nodes[i], &self.nodes[i + 1]),
                Relation::Geq => (&self.nodes[i + 1], &self.nodes[i]),
            };
            if step.witness.source() != lo.source() || &compose(&step.witness, hi)? != lo {
                return Err(ContractionError::NotComposable);
            }
        }
        Ok(())
    }
}

impl Serialize for WitnessChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

fn onto_point(source: AGraph, target: &AGraph) -> Result<Contraction, ContractionError> {
    let n = source.num_vertices();
    Contraction::with_identity_tails(source, target.clone(), vec![0; n])
}

/// Lexicographically least vertex sequence among the longest paths.
fn longest_path(g: &AGraph) -> Vec<VertexId> {
    let n = g.num_vertices();
    let mut best: Vec<VertexId> = Vec::new();
    for u in 0..n {
        for w in 0..n {
            let p = g.path_between(u, w);
            if p.len() > best.len() || (p.len() == best.len() && p < best) {
                best = p;
            }
        }
    }
    best
}

/// Links an all-degree-1 contraction onto τ_0(e) to the path σ_e → τ_0(e)
/// by contract-then-split moves, each lengthening the longest path by one.
pub fn normalize_to_path(a: &Contraction) -> Result<WitnessChain, ContractionError> {
    let target = a.target();
    if target.num_vertices() != 1 || target.tail_count() != 0 {
        return Err(ContractionError::NotTauZero);
    }
    let src = a.source();
    if (0..src.num_vertices()).any(|v| src.beta(v) == 0) {
        return Err(ContractionError::NotDegreeZeroFree);
    }
    if src.max_degree() != 1 {
        return Err(ContractionError::NotBasic);
    }

    let mut nodes = vec![a.clone()];
    let mut steps = Vec::new();
    loop {
        let sigma = nodes.last().expect("non-empty").source().clone();
        let gamma = longest_path(&sigma);
        let Some(pos) = gamma.iter().position(|&v| sigma.valence(v) >= 3) else {
            break;
        };
        let v1 = gamma[pos];
        let (f, _) = sigma
            .neighbors(v1)
            .into_iter()
            .filter(|&(_, w)| !gamma.contains(&w))
            .min()
            .expect("a vertex of valence 3 on a path has an off-path edge");

        let (rho, vmap) = contract_edge(&sigma, f)?;
        let eps = Contraction::with_identity_tails(sigma.clone(), rho.clone(), vmap.clone())?;
        let alpha_rho = onto_point(rho.clone(), target)?;

        // v1 is interior to γ; the flag toward its successor moves to w2.
        let v = vmap[v1];
        let next = vmap[gamma[pos + 1]];
        let toward_next = rho
            .neighbors(v)
            .into_iter()
            .find(|&(_, w)| w == next)
            .map(|(fl, _)| fl)
            .expect("path successor is adjacent");
        let (sigma2, w2) = split_vertex(&rho, v, 1, &[toward_next])?;
        let mut back: Vec<VertexId> = (0..sigma2.num_vertices()).collect();
        back[w2] = v;
        let eps2 = Contraction::with_identity_tails(sigma2.clone(), rho, back)?;
        let alpha2 = onto_point(sigma2, target)?;

        steps.push(WitnessStep { dir: Relation::Leq, witness: eps });
        nodes.push(alpha_rho);
        steps.push(WitnessStep { dir: Relation::Geq, witness: eps2 });
        nodes.push(alpha2);
    }
    Ok(WitnessChain { nodes, steps })
}

/// True when the chain ends at the path σ_e.
pub fn ends_at_path(chain: &WitnessChain) -> bool {
    let end = chain.end().source();
    path_sigma(end.num_vertices() as u32).is_ok_and(|p| canonical_form(&p) == canonical_form(end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agraph::{invariants, star, tau};
    use crate::contraction::canonical_contraction;

    fn diameters(chain: &WitnessChain) -> Vec<usize> {
        chain.nodes.iter().step_by(2).map(|c| invariants(c.source()).diameter).collect()
    }

    #[test]
    fn path_needs_no_moves() {
        let a = canonical_contraction(&path_sigma(5).unwrap()).unwrap();
        let chain = normalize_to_path(&a).unwrap();
        assert!(chain.steps.is_empty());
        assert!(ends_at_path(&chain));
    }

    #[test]
    fn four_star_takes_one_move_through_a_121_path() {
        let a = canonical_contraction(&star(&[1, 1, 1], 1).unwrap()).unwrap();
        let chain = normalize_to_path(&a).unwrap();
        chain.verify().unwrap();
        assert_eq!(chain.moves(), 1);
        let rho = chain.nodes[1].source();
        assert_eq!(invariants(rho).diameter, 3);
        let mut betas = rho.betas().to_vec();
        betas.sort_unstable();
        assert_eq!(betas, vec![1, 1, 2]);
        assert_eq!(rho.valence(rho.betas().iter().position(|&b| b == 2).unwrap()), 2);
        assert!(ends_at_path(&chain));
    }

    #[test]
    fn six_star_gains_one_diameter_per_move() {
        let a = canonical_contraction(&star(&[1; 5], 1).unwrap()).unwrap();
        let chain = normalize_to_path(&a).unwrap();
        chain.verify().unwrap();
        assert_eq!(diameters(&chain), vec![3, 4, 5, 6]);
        assert_eq!(chain.moves(), 3);
        assert!(ends_at_path(&chain));
    }

    #[test]
    fn preconditions() {
        let with_zero = canonical_contraction(&star(&[1, 1, 1], 0).unwrap()).unwrap();
        assert_eq!(normalize_to_path(&with_zero).unwrap_err(), ContractionError::NotDegreeZeroFree);
        let not_basic = Contraction::identity(&tau(0, 2).unwrap()).unwrap();
        assert_eq!(normalize_to_path(&not_basic).unwrap_err(), ContractionError::NotBasic);
        let tailed = Contraction::identity(&tau(1, 1).unwrap()).unwrap();
        assert_eq!(normalize_to_path(&tailed).unwrap_err(), ContractionError::NotTauZero);
    }

    #[test]
    fn chain_serializes_as_step_list() {
        let a = canonical_contraction(&star(&[1, 1, 1], 1).unwrap()).unwrap();
        let v = serde_json::to_value(normalize_to_path(&a).unwrap()).unwrap();
        let steps = v.as_array().unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0]["dir"], "<=");
        assert_eq!(steps[1]["dir"], ">=");
        assert!(steps[0]["witness"]["vertex_map"].is_object());
    }
}
