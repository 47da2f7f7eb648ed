//! Expected dimensions and thresholds for complete intersections, and the
//! stratification of stable maps by stable A-graphs.

mod poset;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::agraph::{canonical_form, forget_tail, split_vertex, tau, AGraph, CanonicalForm, FlagId};

pub use poset::{dimension_steps, stratification_poset, Poset, PosetNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("target is not Fano: N + 1 - sum of degrees = {0}")]
    NotFano(i64),
    #[error("tau_{r}({e}) is unstable")]
    UnstableMain { r: u32, e: u32 },
}

/// A complete intersection of hypersurfaces of the given degrees in P^N.
/// No degrees means P^N itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetDescriptor {
    pub n: u32,
    pub degrees: Vec<u32>,
}

impl TargetDescriptor {
    pub fn new(n: u32, degrees: Vec<u32>) -> Result<Self, StrataError> {
        if degrees.contains(&0) {
            return Err(StrataError::InvalidTarget("degrees must be positive".into()));
        }
        if degrees.len() >= n as usize {
            return Err(StrataError::InvalidTarget(format!("{} equations in P^{n} leave no dimension", degrees.len())));
        }
        Ok(TargetDescriptor { n, degrees })
    }

    pub fn hypersurface(n: u32, d: u32) -> Result<Self, StrataError> {
        Self::new(n, vec![d])
    }

    pub fn projective_space(n: u32) -> Result<Self, StrataError> {
        Self::new(n, Vec::new())
    }

    pub fn dim(&self) -> i64 {
        self.n as i64 - self.degrees.len() as i64
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).sum()
    }

    /// −m where K_X ≡ mL.
    pub fn fano_index(&self) -> i64 {
        self.n as i64 + 1 - self.degree_sum()
    }
}

/// `N:d1,d2,...`; `N:` or `N` alone is projective space.
impl FromStr for TargetDescriptor {
    type Err = StrataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StrataError::InvalidTarget(format!("expected N:d1,d2,... but got {s:?}"));
        let (n, rest) = s.split_once(':').unwrap_or((s, ""));
        let n = n.trim().parse().map_err(|_| bad())?;
        let degrees = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<Vec<u32>, _>>()?;
        Self::new(n, degrees)
    }
}

impl fmt::Display for TargetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.n, ds.join(","))
    }
}

/// −mβ + #tails − #edges + dim X − 3; the empty graph gives dim X.
pub fn expected_dim(x: &TargetDescriptor, g: &AGraph) -> i64 {
    if g.is_empty() {
        return x.dim();
    }
    x.fano_index() * g.beta_total() as i64 + g.tail_count() as i64 - g.edge_count() as i64 + x.dim() - 3
}

/// Threshold degree E and the modified threshold max(E, 2).
pub fn threshold(x: &TargetDescriptor) -> Result<(u32, u32), StrataError> {
    let index = x.fano_index();
    if index <= 0 {
        return Err(StrataError::NotFano(index));
    }
    let e = (x.n as i64 + 2 - x.degrees.len() as i64).div_euclid(index) as u32;
    Ok((e, e.max(2)))
}

/// Rank of the obstruction bundle: (Σ d_i)·β + r.
pub fn obstruction_rank(x: &TargetDescriptor, g: &AGraph) -> u64 {
    let rank = x.degree_sum() as u64 * g.beta_total() as u64 + x.degrees.len() as u64;
    debug_assert!(g.is_empty() || {
        let ambient = TargetDescriptor { n: x.n, degrees: Vec::new() };
        expected_dim(&ambient, g) - expected_dim(x, g) == rank as i64
    });
    rank
}

/// Whether dim(X, τ_1(e)) ≥ 2·dim X.
pub fn bend_break_bound(x: &TargetDescriptor, e: u32) -> bool {
    let t = tau(1, e).expect("τ_1(e) is stable for e ≥ 1");
    expected_dim(x, &t) >= 2 * x.dim()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub graph: AGraph,
    #[serde(rename = "dim")]
    pub expected_dim: Option<i64>,
    #[serde(rename = "codim")]
    pub codim_in_main: usize,
}

/// Every stable split of one vertex: the new vertex takes `moved_beta` and
/// the flags in `moved`.
fn stable_splits(g: &AGraph) -> Vec<AGraph> {
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let flags = g.flags_at(v);
        let k = flags.len();
        for moved_beta in 0..=g.beta(v) {
            let stay_beta = g.beta(v) - moved_beta;
            for mask in 0u32..(1 << k) {
                let moved_count = mask.count_ones() as usize;
                let new_ok = moved_beta > 0 || moved_count + 1 >= 3;
                let old_ok = stay_beta > 0 || k - moved_count + 1 >= 3;
                if !(new_ok && old_ok) {
                    continue;
                }
                let moved: Vec<FlagId> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| flags[i]).collect();
                out.push(split_vertex(g, v, moved_beta, &moved).expect("valid split").0);
            }
        }
    }
    out
}

/// Stable A-graphs with `r` labeled tails and total degree `e`, one per
/// isomorphism class, ordered by (number of edges, canonical form).
pub fn enumerate_strata(r: u32, e: u32) -> Result<Vec<AGraph>, StrataError> {
    let main = tau(r, e).map_err(|_| StrataError::UnstableMain { r, e })?;
    let mut seen: HashSet<CanonicalForm> = HashSet::from([canonical_form(&main)]);
    let mut all = vec![(0usize, canonical_form(&main), main.clone())];
    let mut frontier = vec![main];
    while !frontier.is_empty() {
        let mut level: Vec<(CanonicalForm, AGraph)> = frontier
            .par_iter()
            .flat_map_iter(stable_splits)
            .map(|h| (canonical_form(&h), h))
            .collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        frontier = Vec::new();
        for (key, h) in level {
            if seen.insert(key.clone()) {
                all.push((h.edge_count(), key, h.clone()));
                frontier.push(h);
            }
        }
    }
    all.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(all.into_iter().map(|(_, _, g)| g).collect())
}

pub fn strata(r: u32, e: u32, x: Option<&TargetDescriptor>) -> Result<Vec<Stratum>, StrataError> {
    Ok(enumerate_strata(r, e)?
        .into_iter()
        .map(|g| Stratum { expected_dim: x.map(|x| expected_dim(x, &g)), codim_in_main: g.edge_count(), graph: g })
        .collect())
}

/// Stable graphs other than τ_2(e) with two tails and degree e that become
/// τ_1(e) after forgetting tail 2.
pub fn diagram2_uniqueness(e: u32) -> usize {
    let t1 = canonical_form(&tau(1, e).expect("e ≥ 1"));
    let t2 = canonical_form(&tau(2, e).expect("e ≥ 1"));
    enumerate_strata(2, e)
        .expect("τ_2(e) is stable for e ≥ 1")
        .into_iter()
        .filter(|g| canonical_form(g) != t2)
        .filter(|g| forget_tail(g, 2).is_ok_and(|h| canonical_form(&h) == t1))
        .count()
}
