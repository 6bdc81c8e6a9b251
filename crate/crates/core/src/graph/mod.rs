//! Finite simple graphs, products, generators and the graph expression DSL.

mod bitset;
mod expr;
mod generators;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use bitset::VertexSet;
pub use expr::GraphExpr;
pub use generators::{alon, binomial, complete, cycle, empty, johnson, k_subsets, universal};

use crate::error::{Error, Result};

/// Size guards applied by generators and products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
    /// Cap on `p^(2nd)` candidate pairs enumerated by [`universal`].
    pub max_universal_candidates: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: 5_000, max_universal_candidates: 10_000_000 }
    }
}

impl Limits {
    pub(crate) fn check_vertices(&self, n: u128) -> Result<usize> {
        if n > self.max_vertices as u128 {
            return Err(Error::Guard { what: "vertex count", value: n, limit: self.max_vertices as u128 });
        }
        Ok(n as usize)
    }
}

/// Where a vertex came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// A subset of `[n]`, sorted.
    Subset(Vec<usize>),
    /// Coordinates in a product graph.
    Pair(usize, usize),
    /// A pair of `n×d` matrices `(A, B)` in row-major order.
    Frame { a: Vec<u32>, b: Vec<u32> },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Subset(s) => {
                f.write_str("{")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
            VertexLabel::Frame { a, b } => write!(f, "A={a:?};B={b:?}"),
        }
    }
}

/// Simple undirected graph on vertices `0..n` with bitset adjacency.
///
/// Strong products remember their factors so certificate searches can work
/// factor by factor.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<VertexLabel>>,
    factors: Option<Arc<(Graph, Graph)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { n, adj: (0..n).map(|_| VertexSet::new(n)).collect(), labels: None, factors: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(alloc::format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.factors = None;
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Dimension(alloc::format!("{} labels for {} vertices", labels.len(), self.n)));
        }
        let mut sorted: Vec<&VertexLabel> = labels.iter().collect();
        sorted.sort_by_key(|a| label_key(a));
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("vertex labels are not unique".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// `u == v` or `uv ∈ E`.
    #[inline]
    pub fn equal_or_adjacent(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    /// Factors `(g, h)` when this graph was built as `strong(g, h)`.
    pub fn strong_factors(&self) -> Option<(&Graph, &Graph)> {
        self.factors.as_deref().map(|(g, h)| (g, h))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Negates adjacency off the diagonal; labels are kept.
    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = VertexSet::full(self.n);
            row.difference_with(&self.adj[v]);
            row.remove(v);
            adj.push(row);
        }
        Graph { n: self.n, adj, labels: self.labels.clone(), factors: None }
    }

    /// Strong product with row-major vertex order `(u, x) ↦ u·|V(h)| + x`.
    pub fn strong_product(&self, h: &Graph, limits: &Limits) -> Result<Graph> {
        let mut out = product_skeleton(self, h, limits)?;
        let m = h.n;
        for u in 0..self.n {
            for x in 0..m {
                let a = u * m + x;
                for v in 0..self.n {
                    if !self.equal_or_adjacent(u, v) {
                        continue;
                    }
                    for y in 0..m {
                        let b = v * m + y;
                        if a != b && h.equal_or_adjacent(x, y) {
                            out.adj[a].insert(b);
                        }
                    }
                }
            }
        }
        out.factors = Some(Arc::new((self.clone(), h.clone())));
        Ok(out)
    }

    /// Lexicographic product `self ⋉ h`: each vertex of `self` blown up into a copy of `h`.
    pub fn lex_product(&self, h: &Graph, limits: &Limits) -> Result<Graph> {
        let mut out = product_skeleton(self, h, limits)?;
        let m = h.n;
        for u in 0..self.n {
            for x in 0..m {
                let a = u * m + x;
                for v in 0..self.n {
                    for y in 0..m {
                        if (u != v && self.has_edge(u, v)) || (u == v && h.has_edge(x, y)) {
                            out.adj[a].insert(v * m + y);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_independent_set(&self, s: &[usize]) -> Result<bool> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| u == v || !self.has_edge(u, v))))
    }

    pub fn is_clique(&self, s: &[usize]) -> Result<bool> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| u == v || self.has_edge(u, v))))
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut out = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            self.check_vertex(u)?;
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    out.adj[i].insert(j);
                }
            }
        }
        Ok(out)
    }

    /// FNV-1a digest of the vertex count and adjacency, used to bind
    /// certificates to the graph they were issued for.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.n as u64);
        for (u, v) in self.edges() {
            feed(((u as u64) << 32) | v as u64);
        }
        h
    }
}

fn product_skeleton(g: &Graph, h: &Graph, limits: &Limits) -> Result<Graph> {
    let n = limits.check_vertices(g.n as u128 * h.n as u128)?;
    let mut out = Graph::new(n);
    let labels = (0..g.n).flat_map(|u| (0..h.n).map(move |x| VertexLabel::Pair(u, x))).collect();
    out.labels = Some(labels);
    Ok(out)
}

fn label_key(l: &VertexLabel) -> String {
    alloc::format!("{l}")
}
