//! Canonical encodings of decorated trees (AHU-style, rooted at the centre).

use std::collections::VecDeque;
use std::fmt;

use super::{AGraph, VertexId};

/// Canonical byte string of a graph up to isomorphism preserving incidence,
/// degrees and tail labels. Displays as lowercase hex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalForm)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", String::from_utf8_lossy(&self.0))
    }
}

pub fn canonical_form(g: &AGraph) -> CanonicalForm {
    encode(g, None)
}

/// Like [`canonical_form`], but isomorphisms must also preserve the given
/// per-vertex colour. Used to compare contractions over a fixed target.
pub fn canonical_form_colored(g: &AGraph, colors: &[u32]) -> CanonicalForm {
    assert_eq!(colors.len(), g.num_vertices(), "one colour per vertex");
    encode(g, Some(colors))
}

fn encode(g: &AGraph, colors: Option<&[u32]>) -> CanonicalForm {
    if g.is_empty() {
        return CanonicalForm(b"-".to_vec());
    }
    let adj = g.adjacency();
    let labels: Vec<Vec<u32>> = (0..g.num_vertices()).map(|v| g.tail_labels_at(v)).collect();
    let enc = Encoder { g, adj: &adj, labels: &labels, colors };
    let best = tree_centers(&adj)
        .into_iter()
        .map(|c| enc.rooted(c, None))
        .min()
        .expect("nonempty tree has a centre");
    CanonicalForm(best)
}

struct Encoder<'a> {
    g: &'a AGraph,
    adj: &'a [Vec<VertexId>],
    labels: &'a [Vec<u32>],
    colors: Option<&'a [u32]>,
}

impl Encoder<'_> {
    fn rooted(&self, v: VertexId, parent: Option<VertexId>) -> Vec<u8> {
        let mut out = format!("({}", self.g.beta(v)).into_bytes();
        if !self.labels[v].is_empty() {
            out.push(b':');
            let joined = self.labels[v].iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            out.extend_from_slice(joined.as_bytes());
        }
        if let Some(colors) = self.colors {
            out.extend_from_slice(format!("#{}", colors[v]).as_bytes());
        }
        let mut children: Vec<Vec<u8>> = self.adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| self.rooted(w, Some(v)))
            .collect();
        children.sort();
        for c in children {
            out.extend(c);
        }
        out.push(b')');
        out
    }
}

/// The one or two centres of a tree, found by repeatedly stripping leaves.
pub(crate) fn tree_centers(adj: &[Vec<VertexId>]) -> Vec<VertexId> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<VertexId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// A vertex bijection `g → h` preserving adjacency, degrees and tail labels.
pub fn find_isomorphism(g: &AGraph, h: &AGraph) -> Option<Vec<VertexId>> {
    let n = g.num_vertices();
    if n != h.num_vertices() || g.num_flags() != h.num_flags() || g.tail_count() != h.tail_count() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let (gadj, hadj) = (g.adjacency(), h.adjacency());
    let glabels: Vec<Vec<u32>> = (0..n).map(|v| g.tail_labels_at(v)).collect();
    let hlabels: Vec<Vec<u32>> = (0..n).map(|v| h.tail_labels_at(v)).collect();

    // BFS order from vertex 0 with parents.
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &gadj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }

    let compatible = |v: VertexId, u: VertexId| {
        g.beta(v) == h.beta(u) && gadj[v].len() == hadj[u].len() && glabels[v] == hlabels[u]
    };

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        order: &[VertexId],
        parent: &[VertexId],
        hadj: &[Vec<VertexId>],
        map: &mut [VertexId],
        used: &mut [bool],
        compatible: &dyn Fn(VertexId, VertexId) -> bool,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let candidates: Vec<VertexId> = if i == 0 { (0..hadj.len()).collect() } else { hadj[map[parent[v]]].clone() };
        for u in candidates {
            if used[u] || !compatible(v, u) {
                continue;
            }
            map[v] = u;
            used[u] = true;
            if search(i + 1, order, parent, hadj, map, used, compatible) {
                return true;
            }
            used[u] = false;
            map[v] = usize::MAX;
        }
        false
    }
    search(0, &order, &parent, &hadj, &mut map, &mut used, &compatible).then_some(map)
}
