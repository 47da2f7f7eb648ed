//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library except to convert graphs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ratcurves::agraph::GraphBuilder;
use ratcurves::AGraph;

/// A decorated tree in the plainest form: degrees, an edge list and
/// `(label, vertex)` pairs for the tails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tree {
    pub beta: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
    pub tails: Vec<(u32, usize)>,
}

impl Tree {
    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
            + self.tails.iter().filter(|&&(_, w)| w == v).count()
    }

    pub fn is_stable(&self) -> bool {
        (0..self.n()).all(|v| self.beta[v] > 0 || self.valence(v) >= 3)
    }

    pub fn flags(&self) -> usize {
        2 * self.edges.len() + self.tails.len()
    }

    fn relabeled(&self, perm: &[usize]) -> Tree {
        let mut beta = vec![0; self.n()];
        for v in 0..self.n() {
            beta[perm[v]] = self.beta[v];
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let mut tails: Vec<(u32, usize)> = self.tails.iter().map(|&(l, v)| (l, perm[v])).collect();
        tails.sort_unstable();
        Tree { beta, edges, tails }
    }

    /// Least relabeling over all vertex permutations.
    pub fn canonical(&self) -> Tree {
        permutations(self.n()).iter().map(|p| self.relabeled(p)).min().expect("at least one permutation")
    }

    pub fn to_agraph(&self) -> AGraph {
        self.to_agraph_in_order(&(0..self.n()).collect::<Vec<_>>(), false)
    }

    /// Builds the graph with vertices inserted in `order` and, optionally,
    /// every edge written back to front.
    pub fn to_agraph_in_order(&self, order: &[usize], flip: bool) -> AGraph {
        let mut b = GraphBuilder::new();
        let mut id = vec![0; self.n()];
        for &v in order {
            id[v] = b.vertex(self.beta[v]);
        }
        for &(x, y) in &self.edges {
            if flip {
                b.edge(id[y], id[x]);
            } else {
                b.edge(id[x], id[y]);
            }
        }
        let mut tails = self.tails.clone();
        if flip {
            tails.reverse();
        }
        for (l, v) in tails {
            b.labeled_tail(id[v], l);
        }
        b.build().expect("oracle trees are valid")
    }

    pub fn from_agraph(g: &AGraph) -> Tree {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(f, h)| {
                let (a, b) = (g.boundary(f), g.boundary(h));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let mut tails: Vec<(u32, usize)> =
            g.tails().into_iter().map(|f| (g.tail_label(f).expect("labeled"), g.boundary(f))).collect();
        tails.sort_unstable();
        Tree { beta: g.betas().to_vec(), edges, tails }
    }

    /// Drops the tail labeled `label` and renumbers the larger labels down.
    pub fn forget(&self, label: u32) -> Tree {
        let tails = self
            .tails
            .iter()
            .filter(|&&(l, _)| l != label)
            .map(|&(l, v)| (if l > label { l - 1 } else { l }, v))
            .collect();
        Tree { tails, ..self.clone() }
    }

    /// Removes or smooths unstable degree-0 vertices until none is left.
    pub fn stabilized(&self) -> Tree {
        let mut t = self.clone();
        loop {
            let Some(v) = (0..t.n()).find(|&v| t.beta[v] == 0 && t.valence(v) < 3) else {
                return t;
            };
            let nbrs: Vec<usize> =
                t.edges.iter().filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None }).collect();
            let my_tails: Vec<u32> = t.tails.iter().filter(|&&(_, w)| w == v).map(|&(l, _)| l).collect();
            assert!(!nbrs.is_empty(), "an isolated unstable vertex cannot be stabilized");
            t.edges.retain(|&(a, b)| a != v && b != v);
            if nbrs.len() == 2 {
                t.edges.push((nbrs[0], nbrs[1]));
            } else if let Some(&l) = my_tails.first() {
                t.tails.retain(|&(m, _)| m != l);
                t.tails.push((l, nbrs[0]));
            }
            t = t.without_vertex(v);
        }
    }

    fn without_vertex(&self, v: usize) -> Tree {
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let mut beta = self.beta.clone();
        beta.remove(v);
        let edges = self.edges.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        let tails = self.tails.iter().map(|&(l, w)| (l, shift(w))).collect();
        Tree { beta, edges, tails }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All labeled trees on `n` vertices, from Prüfer sequences.
pub fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return vec![],
        1 => return vec![vec![]],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf");
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Ways to write `total` as an ordered sum of `parts` nonnegative integers.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Isomorphism classes of stable trees with tails `1..=r` and total degree
/// `e`, using at most `max_vertices` vertices.
pub fn stable_trees(r: u32, e: u32, max_vertices: usize) -> BTreeSet<Tree> {
    let bound = (2 * e as usize + r as usize).saturating_sub(2).max(1).min(max_vertices);
    let mut out = BTreeSet::new();
    for n in 1..=bound {
        let trees = labeled_trees(n);
        let betas = compositions(e, n);
        let placements = (n as u64).pow(r) as usize;
        for edges in &trees {
            for beta in &betas {
                for code in 0..placements {
                    let mut c = code;
                    let tails = (1..=r)
                        .map(|l| {
                            let v = c % n;
                            c /= n;
                            (l, v)
                        })
                        .collect();
                    let t = Tree { beta: beta.clone(), edges: edges.clone(), tails };
                    if t.is_stable() {
                        out.insert(t.canonical());
                    }
                }
            }
        }
    }
    out
}

/// Isomorphism test by trying every vertex bijection.
pub fn brute_isomorphic(a: &Tree, b: &Tree) -> bool {
    if a.n() != b.n() || a.edges.len() != b.edges.len() || a.tails.len() != b.tails.len() {
        return false;
    }
    let target = b.relabeled(&(0..b.n()).collect::<Vec<_>>());
    permutations(a.n()).iter().any(|p| a.relabeled(p) == target)
}

/// −m·β + #tails − #edges + dim X − 3 for X ⊂ P^n cut out by `degrees`.
pub fn dim_formula(n: i64, degrees: &[i64], beta: i64, tails: i64, edges: i64) -> i64 {
    let index = n + 1 - degrees.iter().sum::<i64>();
    let dim_x = n - degrees.len() as i64;
    index * beta + tails - edges + dim_x - 3
}

pub fn pascal(rows: usize) -> Vec<Vec<u128>> {
    let mut t: Vec<Vec<u128>> = vec![vec![1]];
    for i in 1..=rows {
        let prev = &t[i - 1];
        let mut row = vec![1u128; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        t.push(row);
    }
    t
}

/// A fixed set of complete intersections used by several tests.
pub fn descriptor_grid() -> Vec<(u32, Vec<u32>)> {
    vec![
        (3, vec![2]),
        (4, vec![2]),
        (4, vec![3]),
        (5, vec![2]),
        (5, vec![3]),
        (6, vec![2, 2]),
        (7, vec![2, 3]),
        (8, vec![3]),
        (9, vec![4]),
        (10, vec![2, 2, 2]),
    ]
}
