//! Oriented graphs with 2-cells, the canonical ladder, and their boundary
//! operators.
//!
//! Indices are zero-based in the API. The JSON form uses one-based vertex
//! and edge numbers, matching the way the operators are usually written
//! down (`e1 = v2 - v1`, ...).

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Matrix};

/// An oriented link `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub const fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }
}

/// One edge of a plaquette boundary with its traversal sign (`+1` or `-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedEdge {
    pub edge: usize,
    pub sign: i8,
}

impl SignedEdge {
    pub const fn new(edge: usize, sign: i8) -> Self {
        Self { edge, sign }
    }
}

/// Vertices, oriented edges and oriented plaquettes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct OrientedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    plaquettes: Vec<Vec<SignedEdge>>,
}

impl OrientedGraph {
    /// Validates and builds a graph.
    ///
    /// Rejects out-of-range indices, self-loops, repeated `(tail, head)`
    /// pairs, signs other than `±1`, and plaquettes whose signed edges do
    /// not close up (non-zero net incidence at some vertex).
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge>,
        plaquettes: Vec<Vec<SignedEdge>>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (j, e) in edges.iter().enumerate() {
            if e.tail >= vertex_count || e.head >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} references a vertex outside 1..={vertex_count}",
                    j + 1
                )));
            }
            if e.tail == e.head {
                return Err(Error::InvalidGraph(format!(
                    "edge {} is a self-loop",
                    j + 1
                )));
            }
            if !seen.insert(*e) {
                return Err(Error::InvalidGraph(format!(
                    "edge {} duplicates ({}, {})",
                    j + 1,
                    e.tail + 1,
                    e.head + 1
                )));
            }
        }
        for (k, p) in plaquettes.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidGraph(format!("plaquette {} is empty", k + 1)));
            }
            let mut net = vec![0i64; vertex_count];
            for se in p {
                if se.edge >= edges.len() {
                    return Err(Error::InvalidGraph(format!(
                        "plaquette {} references edge {} of {}",
                        k + 1,
                        se.edge + 1,
                        edges.len()
                    )));
                }
                if se.sign != 1 && se.sign != -1 {
                    return Err(Error::InvalidGraph(format!(
                        "plaquette {} has sign {} (must be +1 or -1)",
                        k + 1,
                        se.sign
                    )));
                }
                let e = edges[se.edge];
                net[e.head] += se.sign as i64;
                net[e.tail] -= se.sign as i64;
            }
            if net.iter().any(|&x| x != 0) {
                return Err(Error::InvalidGraph(format!(
                    "plaquette {} is not a closed cycle",
                    k + 1
                )));
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            plaquettes,
        })
    }

    /// Builds without validation; only for fixtures that deliberately
    /// break invariants (e.g. a flipped plaquette sign).
    pub fn new_unchecked(
        vertex_count: usize,
        edges: Vec<Edge>,
        plaquettes: Vec<Vec<SignedEdge>>,
    ) -> Self {
        Self {
            vertex_count,
            edges,
            plaquettes,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn plaquette_count(&self) -> usize {
        self.plaquettes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn plaquettes(&self) -> &[Vec<SignedEdge>] {
        &self.plaquettes
    }

    pub fn plaquettes_mut(&mut self) -> &mut [Vec<SignedEdge>] {
        &mut self.plaquettes
    }

    pub fn component_count(&self) -> usize {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut components = 0;
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `∂₁∂₁ᵀ` assembled edge by edge (degree on the diagonal, `-1` per
    /// adjacency). Equal to `boundary1(g) * boundary1(g)ᵀ`.
    pub fn laplacian_int(&self) -> IntMatrix {
        let n = self.vertex_count;
        let mut l = IntMatrix::zeros(n, n);
        for e in &self.edges {
            l[(e.tail, e.tail)] += 1;
            l[(e.head, e.head)] += 1;
            l[(e.tail, e.head)] -= 1;
            l[(e.head, e.tail)] -= 1;
        }
        l
    }

    pub fn laplacian(&self) -> Matrix {
        let n = self.vertex_count;
        let mut l = Matrix::zeros(n, n);
        for e in &self.edges {
            l[(e.tail, e.tail)] += 1.0;
            l[(e.head, e.head)] += 1.0;
            l[(e.tail, e.head)] -= 1.0;
            l[(e.head, e.tail)] -= 1.0;
        }
        l
    }

    /// `∂₁e`: net link value arriving at each vertex.
    pub fn divergence(&self, links: &[f64]) -> Result<Vec<f64>> {
        if links.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                what: "link vector",
                expected: self.edges.len(),
                found: links.len(),
            });
        }
        let mut out = vec![0.0; self.vertex_count];
        for (e, &x) in self.edges.iter().zip(links) {
            out[e.head] += x;
            out[e.tail] -= x;
        }
        Ok(out)
    }

    /// Reorders vertices and edges. `vertex_perm[i]` is the new index of
    /// vertex `i`, `edge_perm[j]` the new index of edge `j`; orientations
    /// are kept.
    pub fn relabeled(&self, vertex_perm: &[usize], edge_perm: &[usize]) -> Result<Self> {
        check_permutation(vertex_perm, self.vertex_count, "vertex permutation")?;
        check_permutation(edge_perm, self.edges.len(), "edge permutation")?;
        let mut edges = vec![Edge::new(0, 0); self.edges.len()];
        for (j, e) in self.edges.iter().enumerate() {
            edges[edge_perm[j]] = Edge::new(vertex_perm[e.tail], vertex_perm[e.head]);
        }
        let plaquettes = self
            .plaquettes
            .iter()
            .map(|p| {
                p.iter()
                    .map(|se| SignedEdge::new(edge_perm[se.edge], se.sign))
                    .collect()
            })
            .collect();
        Self::new(self.vertex_count, edges, plaquettes)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_permutation(perm: &[usize], n: usize, what: &'static str) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            what,
            expected: n,
            found: perm.len(),
        });
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return Err(Error::InvalidParameter(format!(
                "{what} is not a bijection"
            )));
        }
    }
    Ok(())
}

/// Wire form of [`OrientedGraph`]: one-based indices.
#[derive(Serialize, Deserialize)]
struct GraphRecord {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    plaquettes: Vec<Vec<(usize, i8)>>,
}

impl From<OrientedGraph> for GraphRecord {
    fn from(g: OrientedGraph) -> Self {
        Self {
            vertex_count: g.vertex_count,
            edges: g.edges.iter().map(|e| [e.tail + 1, e.head + 1]).collect(),
            plaquettes: g
                .plaquettes
                .iter()
                .map(|p| p.iter().map(|se| (se.edge + 1, se.sign)).collect())
                .collect(),
        }
    }
}

impl TryFrom<GraphRecord> for OrientedGraph {
    type Error = Error;

    fn try_from(r: GraphRecord) -> Result<Self> {
        let one_based = |i: usize, what: &str| {
            i.checked_sub(1)
                .ok_or_else(|| Error::InvalidGraph(format!("{what} index 0 (indices are 1-based)")))
        };
        let edges = r
            .edges
            .iter()
            .map(|&[t, h]| Ok(Edge::new(one_based(t, "vertex")?, one_based(h, "vertex")?)))
            .collect::<Result<Vec<_>>>()?;
        let plaquettes = r
            .plaquettes
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&(e, s)| Ok(SignedEdge::new(one_based(e, "edge")?, s)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OrientedGraph::new(r.vertex_count, edges, plaquettes)
    }
}

/// Role of a ladder edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeRole {
    TemporalRail1,
    TemporalRail2,
    Spatial,
}

impl EdgeRole {
    pub fn is_temporal(self) -> bool {
        !matches!(self, EdgeRole::Spatial)
    }
}

/// A ladder of `N` vertices in canonical indexing.
///
/// With `M = N/2` and one-based numbering: rail-1 vertices are `1..=M`,
/// rail-2 vertices are `M+1..=N`; edges `1..M-1` run along rail 1
/// (`v_k -> v_{k+1}`), edges `M..=N-2` along rail 2
/// (`v_{M+k} -> v_{M+k+1}`), and edges `N-1..=3M-2` are the rungs
/// (`v_k -> v_{M+k}`). Plaquette `k` is `r_k + t2_k - r_{k+1} - t1_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderComplex {
    graph: OrientedGraph,
    n: usize,
    roles: Vec<EdgeRole>,
}

impl LadderComplex {
    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rungs, `N/2`.
    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn roles(&self) -> &[EdgeRole] {
        &self.roles
    }

    pub fn role(&self, edge: usize) -> EdgeRole {
        self.roles[edge]
    }

    /// Zero-based index of the `k`-th (one-based) rail-1 edge.
    pub fn rail1_edge(&self, k: usize) -> usize {
        debug_assert!((1..self.half()).contains(&k));
        k - 1
    }

    /// Zero-based index of the `k`-th (one-based) rail-2 edge.
    pub fn rail2_edge(&self, k: usize) -> usize {
        debug_assert!((1..self.half()).contains(&k));
        self.half() - 2 + k
    }

    /// Zero-based index of the `k`-th (one-based) rung.
    pub fn rung_edge(&self, k: usize) -> usize {
        debug_assert!((1..=self.half()).contains(&k));
        self.n - 3 + k
    }

    pub fn temporal_edge_count(&self) -> usize {
        self.n - 2
    }

    pub fn spatial_edge_count(&self) -> usize {
        self.half()
    }

    /// Accepts a graph only if it is exactly the canonical ladder of its
    /// size (same edges in the same order). Plaquettes are taken from the
    /// canonical construction.
    pub fn from_graph(graph: &OrientedGraph) -> Result<Self> {
        let n = graph.vertex_count();
        let canonical = build_canonical_ladder(n)
            .map_err(|_| Error::NonCanonicalLadder(format!("{n} vertices cannot form a ladder")))?;
        if graph.edge_count() != canonical.graph.edge_count() {
            return Err(Error::NonCanonicalLadder(format!(
                "expected {} edges, found {}",
                canonical.graph.edge_count(),
                graph.edge_count()
            )));
        }
        if let Some((j, _)) = graph
            .edges()
            .iter()
            .zip(canonical.graph.edges())
            .find_position(|(a, b)| a != b)
        {
            return Err(Error::NonCanonicalLadder(format!(
                "edge {} does not follow the rail1/rail2/rung layout",
                j + 1
            )));
        }
        Ok(canonical)
    }
}

/// Canonical ladder with `n` vertices (`n` even, at least 4).
pub fn build_canonical_ladder(n: usize) -> Result<LadderComplex> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidLadderSize(n));
    }
    let m = n / 2;
    let mut edges = Vec::with_capacity(3 * m - 2);
    let mut roles = Vec::with_capacity(3 * m - 2);
    for k in 0..m - 1 {
        edges.push(Edge::new(k, k + 1));
        roles.push(EdgeRole::TemporalRail1);
    }
    for k in 0..m - 1 {
        edges.push(Edge::new(m + k, m + k + 1));
        roles.push(EdgeRole::TemporalRail2);
    }
    for k in 0..m {
        edges.push(Edge::new(k, m + k));
        roles.push(EdgeRole::Spatial);
    }
    let rail1 = |k: usize| k;
    let rail2 = |k: usize| m - 1 + k;
    let rung = |k: usize| 2 * (m - 1) + k;
    let plaquettes = (0..m - 1)
        .map(|k| {
            vec![
                SignedEdge::new(rung(k), 1),
                SignedEdge::new(rail2(k), 1),
                SignedEdge::new(rung(k + 1), -1),
                SignedEdge::new(rail1(k), -1),
            ]
        })
        .collect();
    let graph = OrientedGraph::new(n, edges, plaquettes)?;
    Ok(LadderComplex { graph, n, roles })
}

/// The six-vertex, seven-link, two-plaquette graph whose boundary
/// operators are the reference matrices of the original construction:
/// `e1=v1→v2, e2=v2→v5, e3=v2→v3, e4=v1→v4, e5=v4→v5, e6=v5→v6, e7=v3→v6`,
/// `p1 = e4 + e5 - e2 - e1`, `p2 = e2 + e6 - e3 - e7`.
pub fn build_figure1_fixture() -> OrientedGraph {
    let edges = [(1, 2), (2, 5), (2, 3), (1, 4), (4, 5), (5, 6), (3, 6)]
        .into_iter()
        .map(|(t, h)| Edge::new(t - 1, h - 1))
        .collect();
    let p1 = vec![
        SignedEdge::new(3, 1),
        SignedEdge::new(4, 1),
        SignedEdge::new(1, -1),
        SignedEdge::new(0, -1),
    ];
    let p2 = vec![
        SignedEdge::new(1, 1),
        SignedEdge::new(5, 1),
        SignedEdge::new(2, -1),
        SignedEdge::new(6, -1),
    ];
    OrientedGraph::new(6, edges, vec![p1, p2]).expect("fixture is a valid complex")
}

/// Which boundary map a [`BoundaryOperator`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryDegree {
    /// `∂₁ : C₁ → C₀` (links to vertices).
    One,
    /// `∂₂ : C₂ → C₁` (plaquettes to links).
    Two,
}

/// Integer matrix of a boundary map, entries in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryOperator {
    degree: BoundaryDegree,
    matrix: IntMatrix,
}

impl BoundaryOperator {
    pub fn degree(&self) -> BoundaryDegree {
        self.degree
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `self * selfᵀ` in exact arithmetic.
    pub fn gram(&self) -> IntMatrix {
        self.matrix
            .matmul(&self.matrix.transpose())
            .expect("A * Aᵀ is always conformable")
    }

    pub fn compose(&self, rhs: &BoundaryOperator) -> Result<IntMatrix> {
        self.matrix.matmul(&rhs.matrix)
    }
}

/// `∂₁`: column `j` has `-1` at the tail and `+1` at the head of edge `j`.
pub fn boundary1(graph: &OrientedGraph) -> BoundaryOperator {
    let mut m = IntMatrix::zeros(graph.vertex_count(), graph.edge_count());
    for (j, e) in graph.edges().iter().enumerate() {
        m[(e.tail, j)] = -1;
        m[(e.head, j)] = 1;
    }
    BoundaryOperator {
        degree: BoundaryDegree::One,
        matrix: m,
    }
}

/// `∂₂`: column `k` holds the signed edges of plaquette `k`.
pub fn boundary2(graph: &OrientedGraph) -> BoundaryOperator {
    let mut m = IntMatrix::zeros(graph.edge_count(), graph.plaquette_count());
    for (k, p) in graph.plaquettes().iter().enumerate() {
        for se in p {
            m[(se.edge, k)] += se.sign as i64;
        }
    }
    BoundaryOperator {
        degree: BoundaryDegree::Two,
        matrix: m,
    }
}

/// `e = ∂₁ᵀ v`: each link takes `v[head] - v[tail]`.
pub fn coboundary_links(graph: &OrientedGraph, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            what: "vertex vector",
            expected: graph.vertex_count(),
            found: v.len(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .map(|e| v[e.head] - v[e.tail])
        .collect())
}

/// Integer version of [`coboundary_links`].
pub fn coboundary_links_exact(graph: &OrientedGraph, v: &[i64]) -> Result<Vec<i64>> {
    if v.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            what: "vertex vector",
            expected: graph.vertex_count(),
            found: v.len(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .map(|e| v[e.head] - v[e.tail])
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    pub holds: bool,
    pub max_abs_residual: i64,
}

/// Checks `∂₁∂₂ = 0` exactly.
pub fn verify_boundary_of_boundary(graph: &OrientedGraph) -> BoundaryCheck {
    let product = boundary1(graph)
        .compose(&boundary2(graph))
        .expect("∂₁ and ∂₂ of one graph are conformable");
    BoundaryCheck {
        holds: product.is_zero(),
        max_abs_residual: product.max_abs(),
    }
}

/// Vertex and edge correspondence between two isomorphic oriented graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `vertex_map[i]` is the vertex of the target matching source vertex `i`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[j] = (k, s)`: source edge `j` is target edge `k`, with
    /// `s = -1` when the orientation is reversed.
    pub edge_map: Vec<(usize, i8)>,
}

impl Relabeling {
    /// Carries link values from the source labeling to the target one.
    pub fn map_links(&self, links: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; links.len()];
        for (j, &(k, s)) in self.edge_map.iter().enumerate() {
            out[k] = s as f64 * links[j];
        }
        out
    }

    pub fn map_vertices(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (i, &k) in self.vertex_map.iter().enumerate() {
            out[k] = v[i];
        }
        out
    }
}

/// Exhaustive search for a vertex permutation that carries the
/// (undirected) edge set of `source` onto that of `target`.
///
/// Cost is `O(n!)`; intended for small fixtures only (refuses `n > 9`).
pub fn find_relabeling(
    source: &OrientedGraph,
    target: &OrientedGraph,
) -> Result<Option<Relabeling>> {
    let n = source.vertex_count();
    if n > 9 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive relabeling search is limited to 9 vertices, got {n}"
        )));
    }
    if n != target.vertex_count() || source.edge_count() != target.edge_count() {
        return Ok(None);
    }
    let lookup: HashMap<(usize, usize), (usize, i8)> = target
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(k, e)| [((e.tail, e.head), (k, 1)), ((e.head, e.tail), (k, -1))])
        .collect();
    'perm: for perm in (0..n).permutations(n) {
        let mut edge_map = Vec::with_capacity(source.edge_count());
        for e in source.edges() {
            match lookup.get(&(perm[e.tail], perm[e.head])) {
                Some(&hit) => edge_map.push(hit),
                None => continue 'perm,
            }
        }
        return Ok(Some(Relabeling {
            vertex_map: perm,
            edge_map,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_sizes() {
        for (n, e, p) in [(4, 4, 1), (6, 7, 2), (100, 148, 49)] {
            let l = build_canonical_ladder(n).unwrap();
            assert_eq!(l.graph().vertex_count(), n);
            assert_eq!(l.graph().edge_count(), e);
            assert_eq!(l.graph().plaquette_count(), p);
            assert!(l.graph().is_connected());
        }
    }

    #[test]
    fn ladder_rejects_bad_sizes() {
        for n in [0, 1, 2, 3, 5, 7, 101] {
            assert!(matches!(
                build_canonical_ladder(n),
                Err(Error::InvalidLadderSize(m)) if m == n
            ));
        }
    }

    #[test]
    fn canonical_indexing_and_roles() {
        let l = build_canonical_ladder(8).unwrap();
        let g = l.graph();
        // one-based: rail-1 edges 1..3, rail-2 edges 4..6, rungs 7..10
        assert_eq!(l.rail1_edge(1), 0);
        assert_eq!(l.rail2_edge(1), 3);
        assert_eq!(l.rung_edge(1), 6);
        assert_eq!(l.rung_edge(4), 9);
        assert_eq!(g.edges()[l.rail2_edge(2)], Edge::new(5, 6));
        assert_eq!(g.edges()[l.rung_edge(3)], Edge::new(2, 6));
        let temporal = l.roles().iter().filter(|r| r.is_temporal()).count();
        assert_eq!(temporal, l.temporal_edge_count());
        assert_eq!(l.roles().len() - temporal, l.spatial_edge_count());
    }

    #[test]
    fn graph_validation() {
        let e = |t, h| Edge::new(t, h);
        assert!(OrientedGraph::new(2, vec![e(0, 0)], vec![]).is_err());
        assert!(OrientedGraph::new(2, vec![e(0, 1), e(0, 1)], vec![]).is_err());
        assert!(OrientedGraph::new(2, vec![e(0, 2)], vec![]).is_err());
        // open path is not a plaquette
        let open = vec![SignedEdge::new(0, 1), SignedEdge::new(1, 1)];
        assert!(OrientedGraph::new(3, vec![e(0, 1), e(1, 2)], vec![open]).is_err());
        let tri = vec![
            SignedEdge::new(0, 1),
            SignedEdge::new(1, 1),
            SignedEdge::new(2, -1),
        ];
        assert!(OrientedGraph::new(3, vec![e(0, 1), e(1, 2), e(0, 2)], vec![tri]).is_ok());
    }

    #[test]
    fn boundary_columns_of_small_ladder() {
        let l = build_canonical_ladder(4).unwrap();
        let d1 = boundary1(l.graph());
        for j in 0..d1.cols() {
            assert_eq!(d1.matrix().column(j).iter().sum::<i64>(), 0);
        }
        let d2 = boundary2(l.graph());
        assert_eq!(d2.cols(), 1);
        assert_eq!(d2.matrix().column(0).iter().filter(|&&x| x != 0).count(), 4);
        assert!(verify_boundary_of_boundary(&build_canonical_ladder(8).unwrap().graph).holds);
    }

    #[test]
    fn flipped_plaquette_sign_breaks_the_maxim() {
        let mut g = build_figure1_fixture();
        assert!(verify_boundary_of_boundary(&g).holds);
        g.plaquettes_mut()[0][0].sign = -1;
        let check = verify_boundary_of_boundary(&g);
        assert!(!check.holds);
        assert_eq!(check.max_abs_residual, 2);
    }

    #[test]
    fn coboundary_examples() {
        let l = build_canonical_ladder(6).unwrap();
        let e = coboundary_links(l.graph(), &[0.0, 1.0, 2.0, 0.0, 1.0, 2.0]).unwrap();
        assert_eq!(e, vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        let c = coboundary_links(l.graph(), &[3.5; 6]).unwrap();
        assert!(c.iter().all(|&x| x == 0.0));
        assert!(coboundary_links(l.graph(), &[0.0; 5]).is_err());
    }

    #[test]
    fn from_graph_accepts_only_canonical_layout() {
        let l = build_canonical_ladder(6).unwrap();
        assert_eq!(LadderComplex::from_graph(l.graph()).unwrap(), l);
        assert!(matches!(
            LadderComplex::from_graph(&build_figure1_fixture()),
            Err(Error::NonCanonicalLadder(_))
        ));
    }

    #[test]
    fn relabel_rejects_non_bijections() {
        let g = build_figure1_fixture();
        assert!(g
            .relabeled(&[0, 0, 1, 2, 3, 4], &[0, 1, 2, 3, 4, 5, 6])
            .is_err());
        assert!(g.relabeled(&[0, 1, 2, 3, 4, 5], &[0, 1, 2]).is_err());
    }

    #[test]
    fn json_uses_one_based_indices() {
        let g = build_canonical_ladder(4).unwrap().graph().clone();
        let json = g.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["edges"][0], serde_json::json!([1, 2]));
        assert_eq!(value["plaquettes"][0][0], serde_json::json!([3, 1]));
        assert_eq!(OrientedGraph::from_json(&json).unwrap(), g);
        assert!(
            OrientedGraph::from_json(r#"{"vertex_count":2,"edges":[[0,1]],"plaquettes":[]}"#)
                .is_err()
        );
    }
}
