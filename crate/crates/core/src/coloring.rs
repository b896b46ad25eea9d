//! Colorings, greedy first-fit, the witness-producing verifier, and cheap
//! parameter bounds.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::{Error, Result};

/// Vertex coloring with colors `1..=k`, `k` being the largest color used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// Wraps per-vertex colors. Color 0 is not a color.
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::MalformedColoring(format!(
                "vertex {v} has color 0; colors start at 1"
            )));
        }
        let k = colors.iter().copied().max().unwrap_or(0);
        Ok(Coloring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Permutation of `0..n` used to drive greedy coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder(Vec<usize>);

impl VertexOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::NotPermutation { expected: n });
            }
            seen[v] = true;
        }
        Ok(VertexOrder(order))
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder((0..n).collect())
    }

    pub fn reversed(&self) -> Self {
        VertexOrder(self.0.iter().rev().copied().collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// What a coloring is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringKind {
    /// Adjacent vertices differ.
    Proper,
    /// Proper, and every vertex colored `i` sees all colors below `i`.
    Grundy,
    /// Proper, gap-free, and every class `i` has a vertex seeing all colors
    /// below `i`.
    PartialGrundy,
    /// Proper, gap-free, and every class has a vertex adjacent to all other
    /// classes.
    BColoring,
}

impl ColoringKind {
    pub const ALL: [ColoringKind; 4] = [
        ColoringKind::Proper,
        ColoringKind::Grundy,
        ColoringKind::PartialGrundy,
        ColoringKind::BColoring,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ColoringKind::Proper => "proper",
            ColoringKind::Grundy => "grundy",
            ColoringKind::PartialGrundy => "partial_grundy",
            ColoringKind::BColoring => "b_coloring",
        }
    }
}

impl std::fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ColoringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(ColoringKind::Proper),
            "grundy" => Ok(ColoringKind::Grundy),
            "partial_grundy" => Ok(ColoringKind::PartialGrundy),
            "b_coloring" => Ok(ColoringKind::BColoring),
            _ => Err(Error::InvalidParameter(format!(
                "unknown coloring kind {s:?} (expected proper, grundy, partial_grundy or b_coloring)"
            ))),
        }
    }
}

/// First structural defect found by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Counterexample {
    /// Edge whose endpoints share a color.
    MonochromaticEdge { u: usize, v: usize },
    /// Vertex whose neighborhood misses a color required below its own.
    VertexMissingColor { vertex: usize, missing: usize },
    /// Class with no witness; `missing` is a color the best candidate lacks.
    /// `class == missing` means the class is empty (a gap in `1..=k`).
    ClassMissingColor { class: usize, missing: usize },
}

/// Verification outcome with per-class witnesses or a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub valid: bool,
    pub kind: ColoringKind,
    pub k: usize,
    /// For valid grundy / partial grundy / b colorings: the witnessing
    /// vertices of each class `1..=k`, ascending. Empty for `proper`.
    pub witnesses: Vec<Vec<usize>>,
    pub counterexample: Option<Counterexample>,
}

impl WitnessReport {
    fn valid(kind: ColoringKind, k: usize, witnesses: Vec<Vec<usize>>) -> Self {
        WitnessReport {
            valid: true,
            kind,
            k,
            witnesses,
            counterexample: None,
        }
    }

    fn invalid(kind: ColoringKind, k: usize, ce: Counterexample) -> Self {
        WitnessReport {
            valid: false,
            kind,
            k,
            witnesses: Vec::new(),
            counterexample: Some(ce),
        }
    }
}

/// Greedy coloring along `order`: each vertex takes the smallest positive
/// color absent from its already-colored neighbors.
pub fn first_fit(g: &Graph, order: &VertexOrder) -> Result<Coloring> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::NotPermutation { expected: n });
    }
    let mut colors = vec![0usize; n];
    // a vertex with d earlier neighbors gets a color <= d + 1
    let mut seen = vec![false; n + 2];
    for &v in order.as_slice() {
        let mut cap = 1;
        for &u in g.neighbors(v) {
            let c = colors[u];
            if c != 0 && c <= g.degree(v) + 1 {
                seen[c] = true;
                cap = cap.max(c + 1);
            }
        }
        let mut c = 1;
        while seen[c] {
            c += 1;
        }
        colors[v] = c;
        for s in &mut seen[1..cap.max(2)] {
            *s = false;
        }
    }
    Coloring::new(colors)
}

/// Checks `c` against `kind` on `g`.
///
/// Malformed input (wrong length) is an error; a well-formed coloring that
/// fails the property yields `valid = false` plus a counterexample. All kinds
/// except `proper` additionally require every color in `1..=k` to be used.
pub fn verify(g: &Graph, c: &Coloring, kind: ColoringKind) -> Result<WitnessReport> {
    let n = g.vertex_count();
    if c.len() != n {
        return Err(Error::MalformedColoring(format!(
            "coloring covers {} vertices, graph has {n}",
            c.len()
        )));
    }
    let k = c.k();

    // properness, scanning edges in ascending order
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            return Ok(WitnessReport::invalid(
                kind,
                k,
                Counterexample::MonochromaticEdge { u, v },
            ));
        }
    }
    if kind == ColoringKind::Proper {
        return Ok(WitnessReport::valid(kind, k, Vec::new()));
    }

    // gap-freeness: every color 1..=k present
    if let Some(missing) = smallest_unused_color(c, k) {
        return Ok(WitnessReport::invalid(
            kind,
            k,
            Counterexample::ClassMissingColor {
                class: missing,
                missing,
            },
        ));
    }

    // per-vertex neighborhood color sets; k <= n here since 1..=k all occur
    let classes = class_members(c, k);
    let nb_has = |v: usize, color: usize| g.neighbors(v).iter().any(|&u| c.color(u) == color);

    match kind {
        ColoringKind::Grundy => {
            let mut witnesses = vec![Vec::new(); k];
            for v in 0..n {
                if let Some(missing) = first_missing(g, c, v, 1..c.color(v)) {
                    return Ok(WitnessReport::invalid(
                        kind,
                        k,
                        Counterexample::VertexMissingColor { vertex: v, missing },
                    ));
                }
                witnesses[c.color(v) - 1].push(v);
            }
            Ok(WitnessReport::valid(kind, k, witnesses))
        }
        ColoringKind::PartialGrundy => {
            let mut witnesses = vec![Vec::new(); k];
            for (i, members) in classes.iter().enumerate() {
                let class = i + 1;
                for &v in members {
                    if first_missing(g, c, v, 1..class).is_none() {
                        witnesses[i].push(v);
                    }
                }
                if witnesses[i].is_empty() {
                    let v = members[0];
                    let missing = (1..class).find(|&j| !nb_has(v, j)).unwrap();
                    return Ok(WitnessReport::invalid(
                        kind,
                        k,
                        Counterexample::ClassMissingColor { class, missing },
                    ));
                }
            }
            Ok(WitnessReport::valid(kind, k, witnesses))
        }
        ColoringKind::BColoring => {
            let mut witnesses = vec![Vec::new(); k];
            for (i, members) in classes.iter().enumerate() {
                let class = i + 1;
                for &v in members {
                    let others = (1..=k).filter(|&j| j != class);
                    if first_missing_iter(g, c, v, others).is_none() {
                        witnesses[i].push(v);
                    }
                }
                if witnesses[i].is_empty() {
                    let v = members[0];
                    let missing = (1..=k).find(|&j| j != class && !nb_has(v, j)).unwrap();
                    return Ok(WitnessReport::invalid(
                        kind,
                        k,
                        Counterexample::ClassMissingColor { class, missing },
                    ));
                }
            }
            Ok(WitnessReport::valid(kind, k, witnesses))
        }
        ColoringKind::Proper => unreachable!(),
    }
}

fn smallest_unused_color(c: &Coloring, k: usize) -> Option<usize> {
    // k can exceed n for arbitrary input, so look only at the sorted set of
    // used colors instead of allocating k slots
    let mut used: Vec<usize> = c.colors().to_vec();
    used.sort_unstable();
    used.dedup();
    for (i, &color) in used.iter().enumerate() {
        if color != i + 1 {
            return Some(i + 1);
        }
    }
    if used.len() < k {
        Some(used.len() + 1)
    } else {
        None
    }
}

fn class_members(c: &Coloring, k: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); k];
    for (v, &color) in c.colors().iter().enumerate() {
        classes[color - 1].push(v);
    }
    classes
}

/// Smallest color in `wanted` absent from `v`'s neighborhood.
fn first_missing(
    g: &Graph,
    c: &Coloring,
    v: usize,
    wanted: std::ops::Range<usize>,
) -> Option<usize> {
    first_missing_iter(g, c, v, wanted)
}

fn first_missing_iter<I>(g: &Graph, c: &Coloring, v: usize, wanted: I) -> Option<usize>
where
    I: IntoIterator<Item = usize>,
{
    let mut seen = vec![false; g.degree(v) + c.k().min(g.vertex_count()) + 2];
    for &u in g.neighbors(v) {
        let cu = c.color(u);
        if cu < seen.len() {
            seen[cu] = true;
        }
    }
    wanted.into_iter().find(|&j| j >= seen.len() || !seen[j])
}

/// Cheap bracketing values for the color-maximizing parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// Upper bound for the Grundy and partial Grundy numbers.
    pub max_degree_plus_one: usize,
    /// Clique found by greedy extension from the max-degree vertex; lower
    /// bound for the chromatic number.
    pub clique_lower: usize,
    /// Largest `i` such that at least `i` vertices have degree >= `i - 1`;
    /// upper bound for the b-chromatic number.
    pub m_degree: usize,
}

pub fn parameter_bounds(g: &Graph) -> Result<BoundsReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "bounds need a non-empty graph".to_string(),
        ));
    }

    let start = (0..n)
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut clique = vec![start];
    loop {
        let next =
            (0..n).find(|&v| !clique.contains(&v) && clique.iter().all(|&u| g.has_edge(u, v)));
        match next {
            Some(v) => clique.push(v),
            None => break,
        }
    }

    let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let m_degree = (1..=n)
        .filter(|&i| degrees[i - 1] >= i - 1)
        .max()
        .unwrap_or(0);

    Ok(BoundsReport {
        max_degree_plus_one: g.max_degree() + 1,
        clique_lower: clique.len(),
        m_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn path(n: usize) -> Graph {
        build_family(FamilySpec::Path { n }).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        build_family(FamilySpec::Cycle { n }).unwrap()
    }

    #[test]
    fn first_fit_identity_on_path_alternates() {
        let g = path(4);
        let c = first_fit(&g, &VertexOrder::identity(4)).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1, 2]);
        assert_eq!(c.k(), 2);
    }

    #[test]
    fn first_fit_reaches_three_on_path_with_endpoint_order() {
        let g = path(4);
        let order = VertexOrder::new(vec![0, 3, 1, 2]).unwrap();
        let c = first_fit(&g, &order).unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 1]);
    }

    #[test]
    fn first_fit_rejects_wrong_length_order() {
        let g = path(4);
        assert!(first_fit(&g, &VertexOrder::identity(3)).is_err());
    }

    #[test]
    fn vertex_order_rejects_non_permutations() {
        assert!(VertexOrder::new(vec![0, 0, 1]).is_err());
        assert!(VertexOrder::new(vec![0, 3]).is_err());
        assert!(VertexOrder::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn coloring_rejects_color_zero() {
        assert!(Coloring::new(vec![1, 0, 2]).is_err());
    }

    #[test]
    fn every_first_fit_output_is_grundy_valid() {
        let g = cycle(5);
        for seed in 0..6u64 {
            // a few fixed shuffles
            let mut order: Vec<usize> = (0..5).collect();
            order.rotate_left((seed as usize) % 5);
            if seed % 2 == 1 {
                order.reverse();
            }
            let c = first_fit(&g, &VertexOrder::new(order).unwrap()).unwrap();
            assert!(verify(&g, &c, ColoringKind::Grundy).unwrap().valid);
        }
    }

    #[test]
    fn verify_grundy_on_alternating_cycle() {
        let g = cycle(4);
        let c = Coloring::new(vec![1, 2, 1, 2]).unwrap();
        let report = verify(&g, &c, ColoringKind::Grundy).unwrap();
        assert!(report.valid);
        assert_eq!(report.k, 2);
        assert_eq!(report.witnesses, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn verify_catches_monochromatic_edge() {
        let g = path(3);
        let c = Coloring::new(vec![1, 1, 2]).unwrap();
        let report = verify(&g, &c, ColoringKind::Proper).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::MonochromaticEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn verify_catches_gap() {
        let g = path(3);
        let c = Coloring::new(vec![1, 3, 1]).unwrap();
        let report = verify(&g, &c, ColoringKind::Grundy).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::ClassMissingColor {
                class: 2,
                missing: 2
            })
        );
        // proper does not care about gaps
        assert!(verify(&g, &c, ColoringKind::Proper).unwrap().valid);
    }

    #[test]
    fn verify_catches_grundy_vertex_without_smaller_color() {
        // path 0-1-2-3 colored [2,1,2,1]: fine. [1,2,1,3]: vertex 3 misses 2? no,
        // neighbor 2 has color 1, so vertex 3 colored 3 misses color 2.
        let g = path(4);
        let c = Coloring::new(vec![1, 2, 1, 3]).unwrap();
        let report = verify(&g, &c, ColoringKind::Grundy).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::VertexMissingColor {
                vertex: 3,
                missing: 2
            })
        );
    }

    #[test]
    fn verify_b_coloring_needs_per_class_dominating_vertices() {
        let g = path(4);
        let c = Coloring::new(vec![1, 2, 3, 1]).unwrap();
        let report = verify(&g, &c, ColoringKind::BColoring).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::ClassMissingColor {
                class: 1,
                missing: 3
            })
        );
        // the same coloring is a valid partial grundy coloring
        let pg = verify(&g, &c, ColoringKind::PartialGrundy).unwrap();
        assert!(pg.valid);
        assert_eq!(pg.witnesses, vec![vec![0, 3], vec![1], vec![2]]);
    }

    #[test]
    fn verify_rejects_wrong_length() {
        let g = path(3);
        let c = Coloring::new(vec![1, 2]).unwrap();
        assert!(verify(&g, &c, ColoringKind::Proper).is_err());
    }

    #[test]
    fn verify_handles_huge_colors_without_blowup() {
        let g = path(2);
        let c = Coloring::new(vec![1, 1_000_000_000]).unwrap();
        let report = verify(&g, &c, ColoringKind::Grundy).unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.counterexample,
            Some(Counterexample::ClassMissingColor {
                class: 2,
                missing: 2
            })
        );
    }

    #[test]
    fn bounds_on_known_graphs() {
        let k5 = build_family(FamilySpec::Complete { n: 5 }).unwrap();
        let b = parameter_bounds(&k5).unwrap();
        assert_eq!(b.clique_lower, 5);
        assert_eq!(b.max_degree_plus_one, 5);
        assert_eq!(b.m_degree, 5);

        let star = build_family(FamilySpec::Star { leaves: 5 }).unwrap();
        let b = parameter_bounds(&star).unwrap();
        assert_eq!(b.clique_lower, 2);
        assert_eq!(b.max_degree_plus_one, 6);
        assert_eq!(b.m_degree, 2);

        let p4 = path(4);
        let b = parameter_bounds(&p4).unwrap();
        assert_eq!(b.clique_lower, 2);
        assert_eq!(b.m_degree, 2);

        let c4 = cycle(4);
        assert_eq!(parameter_bounds(&c4).unwrap().m_degree, 3);

        assert!(parameter_bounds(&Graph::new(0)).is_err());
    }
}
