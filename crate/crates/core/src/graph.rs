//! Undirected simple graphs over dense vertex ids, standard families, and
//! the operators used to build test topologies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

use crate::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency lists stay sorted and deduplicated. Self-loops are rejected and
/// parallel edges collapse, so a constructed graph is always simple and
/// symmetric. Graphs are immutable once built; operators return new graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); vertex_count],
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the undirected edge `{u, v}`. Duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        let n = self.adj.len();
        if source >= n {
            return Err(Error::VertexOutOfRange {
                vertex: source,
                vertex_count: n,
            });
        }
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Subgraph induced by `verts` (distinct, in range), relabeled `0..len`
    /// in the given order.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Graph> {
        let n = self.adj.len();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in verts.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: n,
                });
            }
            if index[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "duplicate vertex {v} in induced subgraph selection"
                )));
            }
            index[v] = i;
        }
        let mut g = Graph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[w] > i {
                    g.add_edge(i, index[w])?;
                }
            }
        }
        Ok(g)
    }

    /// Structural self-check: sorted deduplicated lists, symmetry, in-range
    /// ids, no self-loops.
    pub fn is_well_formed(&self) -> bool {
        let n = self.adj.len();
        for (u, nbrs) in self.adj.iter().enumerate() {
            if !nbrs.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &v in nbrs {
                if v >= n || v == u || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        true
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    if let Err(i) = list.binary_search(&x) {
        list.insert(i, x);
    }
}

/// Named graph family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `n` isolated vertices.
    Empty { n: usize },
    /// Path on `n` vertices.
    Path { n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// Star with one center (vertex 0) and `leaves >= 1` leaves.
    Star { leaves: usize },
    /// Complete bipartite graph; sides are `0..m` and `m..m+n`.
    CompleteBipartite { m: usize, n: usize },
    /// Complete `arity`-ary tree of the given depth, vertices in level order
    /// with root 0. Depth 0 is a single vertex.
    KaryTree { arity: usize, depth: usize },
}

pub fn build_family(spec: FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Empty { n } => {
            require(n >= 1, "empty family needs n >= 1")?;
            Ok(Graph::new(n))
        }
        FamilySpec::Path { n } => {
            require(n >= 1, "path needs n >= 1")?;
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        FamilySpec::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        FamilySpec::Complete { n } => {
            require(n >= 1, "complete graph needs n >= 1")?;
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        FamilySpec::Star { leaves } => {
            require(leaves >= 1, "star needs at least one leaf")?;
            Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
        }
        FamilySpec::CompleteBipartite { m, n } => {
            require(m >= 1 && n >= 1, "complete bipartite needs m, n >= 1")?;
            Graph::from_edges(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
        }
        FamilySpec::KaryTree { arity, depth } => {
            require(arity >= 1, "k-ary tree needs arity >= 1")?;
            // level i holds arity^i vertices, numbered consecutively
            let mut level_start = 0usize;
            let mut level_size = 1usize;
            let mut edges = Vec::new();
            for _ in 0..depth {
                let next_start = level_start + level_size;
                for i in 0..level_size {
                    let parent = level_start + i;
                    for c in 0..arity {
                        edges.push((parent, next_start + i * arity + c));
                    }
                }
                level_start = next_start;
                level_size *= arity;
            }
            Graph::from_edges(level_start + level_size, edges)
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// `k`-th power: edge between distinct vertices at hop distance <= `k`.
pub fn power_graph(g: &Graph, k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidParameter("power needs k >= 1".to_string()));
    }
    let n = g.vertex_count();
    let mut out = Graph::new(n);
    // bounded BFS from each vertex
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s] = 0;
        queue.push_back(s);
        let mut touched = vec![s];
        while let Some(u) = queue.pop_front() {
            if dist[u] == k {
                continue;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    touched.push(v);
                    if v > s {
                        out.add_edge(s, v)?;
                    }
                    queue.push_back(v);
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
        }
    }
    Ok(out)
}

fn check_nonempty_pair(g: &Graph, h: &Graph) -> Result<()> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidParameter(
            "product operands must be non-empty".to_string(),
        ));
    }
    Ok(())
}

/// Cartesian product. Vertex `(u, v)` maps to `u * |V(h)| + v`; edges join
/// pairs equal in one coordinate and adjacent in the other.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    check_nonempty_pair(g, h)?;
    let nh = h.vertex_count();
    let mut out = Graph::new(g.vertex_count() * nh);
    for u in g.vertices() {
        for (a, b) in h.edges() {
            out.add_edge(u * nh + a, u * nh + b)?;
        }
    }
    for (u, w) in g.edges() {
        for v in h.vertices() {
            out.add_edge(u * nh + v, w * nh + v)?;
        }
    }
    Ok(out)
}

/// Co-normal sum, same vertex numbering as [`cartesian_product`]: `(u, v)`
/// and `(u', v')` are adjacent when `u ~ u'` in `g` or `v ~ v'` in `h`.
pub fn conormal_sum(g: &Graph, h: &Graph) -> Result<Graph> {
    check_nonempty_pair(g, h)?;
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut out = Graph::new(ng * nh);
    for (u, w) in g.edges() {
        for v in h.vertices() {
            for v2 in h.vertices() {
                out.add_edge(u * nh + v, w * nh + v2)?;
            }
        }
    }
    for (v, v2) in h.edges() {
        for u in g.vertices() {
            for u2 in g.vertices() {
                let (a, b) = (u * nh + v, u2 * nh + v2);
                if a != b {
                    out.add_edge(a, b)?;
                }
            }
        }
    }
    Ok(out)
}

/// G(n, p) with edges drawn over lexicographic pairs so a fixed seed always
/// yields the same graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
