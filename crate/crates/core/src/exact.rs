//! Exact solvers for the color-maximizing parameters and the chromatic
//! number, brute-force oracles for cross-checking them, and the binomial
//! tree family of Grundy witnesses.

use crate::coloring::{first_fit, parameter_bounds, verify, Coloring, ColoringKind, VertexOrder};
use crate::graph::Graph;
use crate::{Error, Result};

/// Default vertex limit for `proper` and `grundy`.
pub const DEFAULT_LIMIT: usize = 16;
/// Default vertex limit for the classwise parameters (`partial_grundy`,
/// `b_coloring`), whose searches branch harder.
pub const DEFAULT_CLASSWISE_LIMIT: usize = 12;
/// Vertex limit for the brute-force oracles.
pub const ORACLE_LIMIT: usize = 8;

// Color sets live in u64 bitmasks, so no search runs past this many vertices
// regardless of the configured limit.
const HARD_LIMIT: usize = 63;

pub fn default_limit(kind: ColoringKind) -> usize {
    match kind {
        ColoringKind::Proper | ColoringKind::Grundy => DEFAULT_LIMIT,
        ColoringKind::PartialGrundy | ColoringKind::BColoring => DEFAULT_CLASSWISE_LIMIT,
    }
}

/// Optimal value together with its lexicographically smallest certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub k: usize,
    pub certificate: Coloring,
}

/// Computes the exact parameter for `kind`: minimum colors for `proper`,
/// maximum achievable `k` for the other kinds. The certificate is the
/// lexicographically smallest optimal coloring (vertex by vertex, id order).
pub fn exact_parameter(g: &Graph, kind: ColoringKind) -> Result<ExactSolution> {
    exact_parameter_with_limit(g, kind, default_limit(kind))
}

pub fn exact_parameter_with_limit(
    g: &Graph,
    kind: ColoringKind,
    limit: usize,
) -> Result<ExactSolution> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "exact solving needs a non-empty graph".to_string(),
        ));
    }
    let limit = limit.min(HARD_LIMIT);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "graph size",
            size: n,
            limit,
        });
    }
    let (k, colors) = match kind {
        ColoringKind::Proper => solve_proper(g),
        ColoringKind::Grundy => solve_grundy(g),
        ColoringKind::PartialGrundy => solve_classwise(g, false),
        ColoringKind::BColoring => solve_classwise(g, true),
    };
    let certificate = Coloring::new(colors)?;
    debug_assert!(verify(g, &certificate, kind)?.valid);
    Ok(ExactSolution { k, certificate })
}

fn bit(c: usize) -> u64 {
    1u64 << (c - 1)
}

/// Mask of colors `1..=j`.
fn low_mask(j: usize) -> u64 {
    if j == 0 {
        0
    } else {
        (1u64 << j) - 1
    }
}

// ---------------------------------------------------------------------------
// grundy

/// Branch-and-prune search for a grundy coloring with maximum color exactly
/// `k`, assigning vertices in id order and colors in ascending order so the
/// first complete coloring found is the lexicographically smallest one.
struct GrundySearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// Colors present among assigned neighbors.
    adj_colors: Vec<u64>,
    /// Per (vertex, color) count of assigned neighbors carrying that color.
    cnt: Vec<u16>,
    /// For assigned vertices: smaller colors their neighborhood still lacks.
    need: Vec<u64>,
    /// Unassigned neighbor count.
    free: Vec<usize>,
    k_count: usize,
}

impl<'a> GrundySearch<'a> {
    fn run(g: &'a Graph, k: usize) -> Option<Vec<usize>> {
        let n = g.vertex_count();
        let mut s = GrundySearch {
            g,
            k,
            color: vec![0; n],
            adj_colors: vec![0; n],
            cnt: vec![0; n * (k + 1)],
            need: vec![0; n],
            free: (0..n).map(|v| g.degree(v)).collect(),
            k_count: 0,
        };
        if s.dfs(0) {
            Some(s.color)
        } else {
            None
        }
    }

    fn dfs(&mut self, v: usize) -> bool {
        if self.k_count == 0 && !self.color_k_reachable() {
            return false;
        }
        if v == self.g.vertex_count() {
            return self.k_count > 0;
        }
        // a vertex colored c needs c-1 distinct smaller colors next to it
        let cap = self.k.min(self.g.degree(v) + 1);
        for c in 1..=cap {
            if self.adj_colors[v] & bit(c) != 0 {
                continue;
            }
            let need_v = low_mask(c - 1) & !self.adj_colors[v];
            if need_v.count_ones() as usize > self.free[v] {
                // the deficit only grows with c
                break;
            }
            if self.assign(v, c, need_v) && self.dfs(v + 1) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    /// Applies the assignment fully (so `unassign` is always symmetric) and
    /// reports whether every assigned neighbor can still meet its needs.
    fn assign(&mut self, v: usize, c: usize, need_v: u64) -> bool {
        let g = self.g;
        let k = self.k;
        self.color[v] = c;
        self.need[v] = need_v;
        if c == k {
            self.k_count += 1;
        }
        let mut ok = true;
        for &u in g.neighbors(v) {
            self.free[u] -= 1;
            let slot = u * (k + 1) + c;
            self.cnt[slot] += 1;
            if self.cnt[slot] == 1 {
                self.adj_colors[u] |= bit(c);
                self.need[u] &= !bit(c);
            }
            if self.color[u] != 0 && self.need[u].count_ones() as usize > self.free[u] {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        let g = self.g;
        let k = self.k;
        self.color[v] = 0;
        self.need[v] = 0;
        if c == k {
            self.k_count -= 1;
        }
        for &u in g.neighbors(v) {
            self.free[u] += 1;
            let slot = u * (k + 1) + c;
            self.cnt[slot] -= 1;
            if self.cnt[slot] == 0 {
                self.adj_colors[u] &= !bit(c);
                if self.color[u] != 0 && c < self.color[u] {
                    self.need[u] |= bit(c);
                }
            }
        }
    }

    /// Some unassigned vertex must still be able to take color `k`.
    fn color_k_reachable(&self) -> bool {
        let k = self.k;
        let low = low_mask(k - 1);
        (0..self.g.vertex_count()).any(|u| {
            self.color[u] == 0
                && self.g.degree(u) + 1 >= k
                && self.adj_colors[u] & bit(k) == 0
                && (low & !self.adj_colors[u]).count_ones() as usize <= self.free[u]
        })
    }
}

fn solve_grundy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let greedy = first_fit(g, &VertexOrder::identity(n)).unwrap();
    let lower = greedy.k();
    let upper = (g.max_degree() + 1).min(n);
    for k in (lower..=upper).rev() {
        if let Some(colors) = GrundySearch::run(g, k) {
            return (k, colors);
        }
    }
    unreachable!("the identity-order greedy coloring witnesses feasibility at the lower bound")
}

// ---------------------------------------------------------------------------
// partial grundy and b-coloring

/// Search for a gap-free proper coloring with colors `1..=k` in which every
/// class keeps a potential witness: a vertex that can still end up seeing all
/// smaller colors (partial grundy) or all other classes (b-coloring). Same
/// id-order, ascending-color discipline as the grundy search.
struct ClasswiseSearch<'a> {
    g: &'a Graph,
    k: usize,
    b_mode: bool,
    color: Vec<usize>,
    adj_colors: Vec<u64>,
    cnt: Vec<u16>,
    free: Vec<usize>,
}

impl<'a> ClasswiseSearch<'a> {
    fn run(g: &'a Graph, k: usize, b_mode: bool) -> Option<Vec<usize>> {
        let n = g.vertex_count();
        let mut s = ClasswiseSearch {
            g,
            k,
            b_mode,
            color: vec![0; n],
            adj_colors: vec![0; n],
            cnt: vec![0; n * (k + 1)],
            free: (0..n).map(|v| g.degree(v)).collect(),
        };
        if s.dfs(0) {
            Some(s.color)
        } else {
            None
        }
    }

    fn dfs(&mut self, v: usize) -> bool {
        if !self.classes_feasible() {
            return false;
        }
        if v == self.g.vertex_count() {
            // with everything assigned the feasibility check is exact
            return true;
        }
        for c in 1..=self.k {
            if self.adj_colors[v] & bit(c) != 0 {
                continue;
            }
            self.assign(v, c);
            if self.dfs(v + 1) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    /// Every class `i` needs a candidate witness: a vertex already colored
    /// `i` (or still colorable with `i`) whose remaining requirement fits in
    /// its unassigned neighborhood.
    fn classes_feasible(&self) -> bool {
        let n = self.g.vertex_count();
        'class: for i in 1..=self.k {
            let req = if self.b_mode {
                low_mask(self.k) & !bit(i)
            } else {
                low_mask(i - 1)
            };
            for v in 0..n {
                let candidate =
                    self.color[v] == i || (self.color[v] == 0 && self.adj_colors[v] & bit(i) == 0);
                if candidate && (req & !self.adj_colors[v]).count_ones() as usize <= self.free[v] {
                    continue 'class;
                }
            }
            return false;
        }
        true
    }

    fn assign(&mut self, v: usize, c: usize) {
        let g = self.g;
        let k = self.k;
        self.color[v] = c;
        for &u in g.neighbors(v) {
            self.free[u] -= 1;
            let slot = u * (k + 1) + c;
            self.cnt[slot] += 1;
            if self.cnt[slot] == 1 {
                self.adj_colors[u] |= bit(c);
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        let g = self.g;
        let k = self.k;
        self.color[v] = 0;
        for &u in g.neighbors(v) {
            self.free[u] += 1;
            let slot = u * (k + 1) + c;
            self.cnt[slot] -= 1;
            if self.cnt[slot] == 0 {
                self.adj_colors[u] &= !bit(c);
            }
        }
    }
}

fn solve_classwise(g: &Graph, b_mode: bool) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let bounds = parameter_bounds(g).unwrap();
    let upper = if b_mode {
        bounds.m_degree
    } else {
        bounds.max_degree_plus_one.min(n)
    };
    for k in (1..=upper).rev() {
        if let Some(colors) = ClasswiseSearch::run(g, k, b_mode) {
            return (k, colors);
        }
    }
    unreachable!("k = 1 is feasible for edgeless graphs and k >= 2 otherwise")
}

// ---------------------------------------------------------------------------
// proper (chromatic number)

struct ProperSearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
}

impl<'a> ProperSearch<'a> {
    fn run(g: &'a Graph, k: usize) -> Option<Vec<usize>> {
        let mut s = ProperSearch {
            g,
            k,
            color: vec![0; g.vertex_count()],
        };
        if s.dfs(0) {
            Some(s.color)
        } else {
            None
        }
    }

    fn dfs(&mut self, v: usize) -> bool {
        if v == self.g.vertex_count() {
            return true;
        }
        // vertices are assigned in id order, so assigned neighbors are
        // exactly those with smaller ids
        let mut forbidden = 0u64;
        for &u in self.g.neighbors(v) {
            if u < v {
                forbidden |= bit(self.color[u]);
            }
        }
        for c in 1..=self.k {
            if forbidden & bit(c) != 0 {
                continue;
            }
            self.color[v] = c;
            if self.dfs(v + 1) {
                return true;
            }
        }
        self.color[v] = 0;
        false
    }
}

fn solve_proper(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let lower = parameter_bounds(g).unwrap().clique_lower;
    let upper = first_fit(g, &VertexOrder::identity(n)).unwrap().k();
    for k in lower..=upper {
        if let Some(colors) = ProperSearch::run(g, k) {
            return (k, colors);
        }
    }
    unreachable!("the greedy coloring witnesses feasibility at the upper bound")
}

// ---------------------------------------------------------------------------
// oracles

fn check_oracle_size(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "oracles need a non-empty graph".to_string(),
        ));
    }
    if n > ORACLE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "graph size",
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(n)
}

/// Grundy number by running first-fit over every vertex permutation.
/// Independent of the branch-and-prune machinery above.
pub fn grundy_permutation_oracle(g: &Graph) -> Result<usize> {
    let n = check_oracle_size(g)?;
    let mut order: Vec<usize> = (0..n).collect();
    let mut colors = vec![0usize; n];
    let mut best = 0;
    permute(&mut order, n, &mut |order| {
        colors.iter_mut().for_each(|c| *c = 0);
        let mut max = 0;
        for &v in order {
            let mut used = 0u64;
            for &u in g.neighbors(v) {
                if colors[u] != 0 {
                    used |= bit(colors[u]);
                }
            }
            let c = (!used).trailing_zeros() as usize + 1;
            colors[v] = c;
            max = max.max(c);
        }
        best = best.max(max);
    });
    Ok(best)
}

/// Heap's algorithm; calls `f` with each permutation of `items`.
fn permute<F: FnMut(&[usize])>(items: &mut [usize], size: usize, f: &mut F) {
    if size <= 1 {
        f(items);
        return;
    }
    for i in 0..size {
        permute(items, size - 1, f);
        if size.is_multiple_of(2) {
            items.swap(i, size - 1);
        } else {
            items.swap(0, size - 1);
        }
    }
}

/// Extremal `k` over every color assignment that passes [`verify`]:
/// the minimum for `proper`, the maximum otherwise. Colors range over
/// `1..=max_degree + 1`, except `1..=m_degree` for `b_coloring`.
pub fn exhaustive_assignment_oracle(g: &Graph, kind: ColoringKind) -> Result<usize> {
    let n = check_oracle_size(g)?;
    let max_color = match kind {
        ColoringKind::BColoring => parameter_bounds(g)?.m_degree,
        _ => g.max_degree() + 1,
    };
    let mut colors = vec![0usize; n];
    let best = if kind == ColoringKind::Proper {
        let mut best = usize::MAX;
        min_proper_rec(g, 0, max_color, 0, &mut colors, &mut best);
        best
    } else {
        let mut best = 0;
        max_valid_rec(g, kind, 0, max_color, 0, &mut colors, &mut best);
        best
    };
    debug_assert!(best >= 1 && best != usize::MAX);
    Ok(best)
}

fn forbidden_mask(g: &Graph, colors: &[usize], v: usize) -> u64 {
    // id-order enumeration: assigned neighbors are exactly the smaller ids
    g.neighbors(v)
        .iter()
        .filter(|&&u| u < v)
        .fold(0u64, |m, &u| m | bit(colors[u]))
}

/// Minimum max-color over complete proper assignments. Every valid coloring
/// of any kind is proper, so enumerating only conflict-free prefixes loses
/// nothing; prefixes that already reach `best` cannot improve a minimum.
fn min_proper_rec(
    g: &Graph,
    v: usize,
    max_color: usize,
    prefix_max: usize,
    colors: &mut [usize],
    best: &mut usize,
) {
    if prefix_max >= *best {
        return;
    }
    if v == g.vertex_count() {
        *best = prefix_max;
        return;
    }
    let forbidden = forbidden_mask(g, colors, v);
    for c in 1..=max_color {
        if c >= *best && c > prefix_max {
            break;
        }
        if forbidden & bit(c) != 0 {
            continue;
        }
        colors[v] = c;
        min_proper_rec(g, v + 1, max_color, prefix_max.max(c), colors, best);
    }
}

/// Maximum `k` over complete proper assignments whose leaf passes the
/// kind's validity predicate.
fn max_valid_rec(
    g: &Graph,
    kind: ColoringKind,
    v: usize,
    max_color: usize,
    prefix_max: usize,
    colors: &mut [usize],
    best: &mut usize,
) {
    if v == g.vertex_count() {
        if prefix_max > *best && assignment_valid(g, colors, prefix_max, kind) {
            *best = prefix_max;
        }
        return;
    }
    let forbidden = forbidden_mask(g, colors, v);
    for c in 1..=max_color {
        if forbidden & bit(c) != 0 {
            continue;
        }
        colors[v] = c;
        max_valid_rec(g, kind, v + 1, max_color, prefix_max.max(c), colors, best);
    }
}

/// Leaf predicate shared by the oracle: gap-free plus the kind's witness
/// condition, written directly from the definitions.
fn assignment_valid(g: &Graph, colors: &[usize], k: usize, kind: ColoringKind) -> bool {
    let mut used = 0u64;
    for &c in colors {
        used |= bit(c);
    }
    if kind != ColoringKind::Proper && used != low_mask(k) {
        return false;
    }
    let nb_mask =
        |v: usize| -> u64 { g.neighbors(v).iter().fold(0u64, |m, &u| m | bit(colors[u])) };
    match kind {
        ColoringKind::Proper => true,
        ColoringKind::Grundy => {
            (0..colors.len()).all(|v| low_mask(colors[v] - 1) & !nb_mask(v) == 0)
        }
        ColoringKind::PartialGrundy => (1..=k).all(|i| {
            (0..colors.len()).any(|v| colors[v] == i && low_mask(i - 1) & !nb_mask(v) == 0)
        }),
        ColoringKind::BColoring => (1..=k).all(|i| {
            (0..colors.len()).any(|v| colors[v] == i && (low_mask(k) & !bit(i)) & !nb_mask(v) == 0)
        }),
    }
}

// ---------------------------------------------------------------------------
// binomial trees

/// Binomial tree of index `k`: 2^(k-1) vertices whose root (vertex 0) is
/// forced up to color `k` by first-fit, together with that canonical
/// coloring. Built by joining two copies of the previous tree at their roots.
pub fn binomial_tree(k: usize) -> Result<(Graph, Coloring)> {
    binomial_tree_with_limit(k, DEFAULT_LIMIT)
}

pub fn binomial_tree_with_limit(k: usize, limit: usize) -> Result<(Graph, Coloring)> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "binomial tree index must be at least 1".to_string(),
        ));
    }
    if k > limit {
        return Err(Error::LimitExceeded {
            what: "tree index",
            size: k,
            limit,
        });
    }
    if k > 24 {
        return Err(Error::InvalidParameter(format!(
            "binomial tree of index {k} would have 2^{} vertices",
            k - 1
        )));
    }
    let mut n = 1usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut colors = vec![1usize];
    for _ in 1..k {
        let shifted: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u + n, v + n)).collect();
        edges.extend(shifted);
        edges.push((0, n));
        colors.extend_from_within(..);
        colors[0] += 1;
        n *= 2;
    }
    let g = Graph::from_edges(n, edges)?;
    let c = Coloring::new(colors)?;
    Ok((g, c))
}
