//! Stabilization and the tail-forgetting operators r_{>0}, r_0 and r.

use super::{AGraph, FlagId, GraphError, VertexId};

/// Which tails [`remove_tails`] strips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Tails at vertices of positive degree (r_{>0}).
    Positive,
    /// Tails at degree-0 vertices, then stabilize (r_0).
    Zero,
    /// Both (r).
    All,
}

/// Mutable scratch copy used by the rewrite loop.
struct Work {
    beta: Vec<u32>,
    boundary: Vec<VertexId>,
    involution: Vec<FlagId>,
    labels: Vec<Option<u32>>,
    vertex_alive: Vec<bool>,
    flag_alive: Vec<bool>,
}

impl Work {
    fn new(g: &AGraph) -> Self {
        let (beta, boundary, involution, labels) = g.raw_parts();
        Work {
            beta: beta.to_vec(),
            boundary: boundary.to_vec(),
            involution: involution.to_vec(),
            labels: labels.to_vec(),
            vertex_alive: vec![true; beta.len()],
            flag_alive: vec![true; boundary.len()],
        }
    }

    fn flags_at(&self, v: VertexId) -> Vec<FlagId> {
        (0..self.boundary.len()).filter(|&f| self.flag_alive[f] && self.boundary[f] == v).collect()
    }

    fn remove_tail(&mut self, f: FlagId) {
        self.flag_alive[f] = false;
    }

    /// One rewrite at the lowest unstable vertex. `Ok(false)` at the fixpoint.
    fn step(&mut self) -> Result<bool, GraphError> {
        let Some(v) = (0..self.beta.len()).find(|&v| {
            self.vertex_alive[v] && self.beta[v] == 0 && self.flags_at(v).len() < 3
        }) else {
            return Ok(false);
        };
        let flags = self.flags_at(v);
        let is_tail = |w: &Work, f: FlagId| w.involution[f] == f;
        match flags.as_slice() {
            [] => return Err(GraphError::Unstabilizable),
            [f] => {
                if is_tail(self, *f) {
                    return Err(GraphError::Unstabilizable);
                }
                let j = self.involution[*f];
                self.flag_alive[*f] = false;
                self.flag_alive[j] = false;
            }
            [f1, f2] => match (is_tail(self, *f1), is_tail(self, *f2)) {
                (true, true) => return Err(GraphError::Unstabilizable),
                (false, false) => {
                    let (j1, j2) = (self.involution[*f1], self.involution[*f2]);
                    self.involution[j1] = j2;
                    self.involution[j2] = j1;
                    self.flag_alive[*f1] = false;
                    self.flag_alive[*f2] = false;
                }
                (first_is_tail, _) => {
                    // `e` is the edge flag at v, `t` the tail whose label survives.
                    let (e, t) = if first_is_tail { (*f2, *f1) } else { (*f1, *f2) };
                    let j = self.involution[e];
                    self.involution[j] = j;
                    self.labels[j] = self.labels[t];
                    self.flag_alive[e] = false;
                    self.flag_alive[t] = false;
                }
            },
            _ => unreachable!("valence below 3"),
        }
        self.vertex_alive[v] = false;
        Ok(true)
    }

    fn finish(self) -> AGraph {
        let mut vmap = vec![usize::MAX; self.beta.len()];
        let mut beta = Vec::new();
        for (v, &alive) in self.vertex_alive.iter().enumerate() {
            if alive {
                vmap[v] = beta.len();
                beta.push(self.beta[v]);
            }
        }
        let mut fmap = vec![usize::MAX; self.boundary.len()];
        let mut next = 0;
        for (f, &alive) in self.flag_alive.iter().enumerate() {
            if alive {
                fmap[f] = next;
                next += 1;
            }
        }
        let live: Vec<FlagId> = (0..self.boundary.len()).filter(|&f| self.flag_alive[f]).collect();
        let boundary = live.iter().map(|&f| vmap[self.boundary[f]]).collect();
        let involution = live.iter().map(|&f| fmap[self.involution[f]]).collect();
        let labels = live
            .iter()
            .map(|&f| if self.involution[f] == f { self.labels[f] } else { None })
            .collect();
        AGraph { beta, boundary, involution, labels }
    }
}

/// Contracts unstable degree-0 vertices until every such vertex has valence ≥ 3.
///
/// A valence-1 vertex is deleted with its edge; a valence-2 vertex is smoothed
/// (two edges merge, or an edge and a tail merge into a tail keeping its label).
pub fn stabilize(g: &AGraph) -> Result<AGraph, GraphError> {
    let mut w = Work::new(g);
    while w.step()? {}
    Ok(w.finish())
}

/// Renumbers surviving tail labels to `1..=r`, keeping their relative order.
fn compact_labels(g: AGraph) -> AGraph {
    let mut present: Vec<u32> = g.labels.iter().flatten().copied().collect();
    present.sort_unstable();
    let labels = g
        .labels
        .iter()
        .map(|l| l.map(|x| present.binary_search(&x).expect("present") as u32 + 1))
        .collect();
    AGraph { labels, ..g }
}

fn drop_flags(g: &AGraph, drop: impl Fn(FlagId) -> bool) -> AGraph {
    let mut w = Work::new(g);
    for f in 0..g.num_flags() {
        if g.is_tail(f) && drop(f) {
            w.remove_tail(f);
        }
    }
    compact_labels(w.finish())
}

pub fn remove_tails(g: &AGraph, mode: TailMode) -> Result<AGraph, GraphError> {
    let positive = |f: FlagId| g.beta(g.boundary(f)) > 0;
    match mode {
        TailMode::Positive => Ok(drop_flags(g, positive)),
        TailMode::Zero => stabilize(&drop_flags(g, |f| !positive(f))),
        TailMode::All => stabilize(&drop_flags(g, |_| true)),
    }
}

/// Forgets the tail with the given label, renumbers the rest and stabilizes.
pub fn forget_tail(g: &AGraph, label: u32) -> Result<AGraph, GraphError> {
    let t = g.tail_with_label(label).ok_or(GraphError::NoSuchTail(label))?;
    stabilize(&drop_flags(g, |f| f == t))
}
