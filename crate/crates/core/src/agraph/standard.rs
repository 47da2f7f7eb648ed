use super::{AGraph, GraphBuilder, GraphError};

/// The named families of small graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    /// τ_r(e): one vertex of degree `e` carrying `r` tails.
    Tau { r: u32, e: u32 },
    /// τ_{r1,r2}(e1,e2): two adjacent vertices with `r1` and `r2` tails.
    Tau2 { r1: u32, r2: u32, e1: u32, e2: u32 },
    /// σ_e: a path on `e` vertices of degree 1.
    PathSigma { e: u32 },
    Empty,
}

impl StandardKind {
    pub fn build(self) -> Result<AGraph, GraphError> {
        match self {
            StandardKind::Tau { r, e } => tau(r, e),
            StandardKind::Tau2 { r1, r2, e1, e2 } => tau2(r1, r2, e1, e2),
            StandardKind::PathSigma { e } => path_sigma(e),
            StandardKind::Empty => Ok(AGraph::empty()),
        }
    }
}

pub fn tau(r: u32, e: u32) -> Result<AGraph, GraphError> {
    if e == 0 && r < 3 {
        return Err(GraphError::UnstableRequest(format!("tau_{r}({e})")));
    }
    let mut b = GraphBuilder::new();
    let v = b.vertex(e);
    for _ in 0..r {
        b.tail(v);
    }
    b.build()
}

/// Tails on the first vertex get labels `1..=r1`, the rest `r1+1..`.
pub fn tau2(r1: u32, r2: u32, e1: u32, e2: u32) -> Result<AGraph, GraphError> {
    let mut b = GraphBuilder::new();
    let v1 = b.vertex(e1);
    let v2 = b.vertex(e2);
    b.edge(v1, v2);
    for _ in 0..r1 {
        b.tail(v1);
    }
    for _ in 0..r2 {
        b.tail(v2);
    }
    let g = b.build()?;
    if !g.is_stable() {
        return Err(GraphError::UnstableRequest(format!("tau_{{{r1},{r2}}}({e1},{e2})")));
    }
    Ok(g)
}

pub fn path_sigma(e: u32) -> Result<AGraph, GraphError> {
    let mut b = GraphBuilder::new();
    let mut prev = None;
    for _ in 0..e {
        let v = b.vertex(1);
        if let Some(p) = prev {
            b.edge(p, v);
        }
        prev = Some(v);
    }
    b.build()
}

/// A star: centre of degree `center` joined to one leaf per entry of `leaves`.
pub fn star(leaves: &[u32], center: u32) -> Result<AGraph, GraphError> {
    let mut b = GraphBuilder::new();
    let c = b.vertex(center);
    for &l in leaves {
        let v = b.vertex(l);
        b.edge(c, v);
    }
    b.build()
}
