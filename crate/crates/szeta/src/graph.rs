//! Weighted multigraphs and integral first-homology coordinates.
//!
//! A graph here is a connected undirected multigraph with strictly positive
//! rational edge weights; loops and parallel edges are allowed. Homology
//! classes are written in cotree coordinates: fix the spanning tree of
//! minimal edge indices, and record the signed number of times a closed walk
//! crosses each non-tree edge in its canonical direction. This identifies
//! `H_1` with `Z^b`, `b = |E| - |V| + 1`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::num::{format_rational, parse_rational, q_to_f64, Q};

/// One undirected edge `u -- v` with a positive weight.
///
/// The canonical direction of a non-loop edge runs from the smaller to the
/// larger endpoint id; a loop's canonical direction is its listed traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Q,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Tail of the canonical direction.
    pub fn tail(&self) -> usize {
        self.u.min(self.v)
    }

    /// Head of the canonical direction.
    pub fn head(&self) -> usize {
        self.u.max(self.v)
    }
}

/// A connected weighted multigraph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// A fixed homology basis: the minimum-edge-index spanning tree together
/// with the cotree edges in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis {
    spanning_tree: Vec<usize>,
    cotree_edges: Vec<usize>,
    betti: usize,
}

/// An integer homology class in cotree coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(betti: usize) -> Self {
        HomologyClass(vec![0; betti])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        HomologyClass(self.0.iter().map(|&c| -c).collect())
    }

    /// Lexicographically positive, i.e. the first nonzero coordinate is > 0.
    pub fn is_lex_positive(&self) -> bool {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) => c > 0,
            None => false,
        }
    }

    pub fn scaled(&self, n: i64) -> Self {
        HomologyClass(self.0.iter().map(|&c| c * n).collect())
    }
}

/// One step of a walk: an edge index and whether it is traversed in its
/// canonical direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: usize,
    pub forward: bool,
}

impl WalkStep {
    pub fn forward(edge: usize) -> Self {
        WalkStep { edge, forward: true }
    }

    pub fn backward(edge: usize) -> Self {
        WalkStep { edge, forward: false }
    }
}

impl WeightedGraph {
    /// Builds a validated graph with an explicit vertex count.
    ///
    /// Edge order is preserved: the index of an edge is its position in
    /// `edges`. The graph must be connected.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, Q)>) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v, weight)| Edge { u, v, weight })
            .collect();
        for e in &edges {
            if e.u >= vertex_count {
                return Err(Error::BadVertexId(e.u, vertex_count));
            }
            if e.v >= vertex_count {
                return Err(Error::BadVertexId(e.v, vertex_count));
            }
            if !e.weight.is_positive() {
                return Err(Error::NonPositiveWeight);
            }
        }
        let g = WeightedGraph { vertex_count, edges };
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    /// Builds a graph from a bare edge list, inferring the vertex count.
    pub fn from_edges(edges: Vec<(usize, usize, Q)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Parse("empty edge list".into()));
        }
        let vertex_count = edges.iter().map(|&(u, v, _)| u.max(v)).max().unwrap() + 1;
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all edge weights, the 1-dimensional volume of the graph.
    pub fn total_weight(&self) -> Q {
        self.edges.iter().map(|e| e.weight.clone()).sum()
    }

    /// Returns a copy with the same combinatorics and new weights.
    pub fn reweighted(&self, weights: &[Q]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::MismatchedEdgeSets);
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight);
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, w)| (e.u, e.v, w.clone()))
            .collect();
        Self::new(self.vertex_count, edges)
    }

    /// True when every edge weight equals 1.
    pub fn is_combinatorial(&self) -> bool {
        use num_traits::One;
        self.edges.iter().all(|e| e.weight.is_one())
    }

    fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The homology basis from the minimum-edge-index spanning tree.
    ///
    /// Tie-breaking is by edge index, not weight, so homology coordinates are
    /// stable when only the weights change.
    pub fn homology_basis(&self) -> HomologyBasis {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut tree = Vec::new();
        let mut cotree = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru != rv {
                parent[ru] = rv;
                tree.push(i);
            } else {
                cotree.push(i);
            }
        }
        let betti = cotree.len();
        debug_assert_eq!(betti, self.edges.len() + 1 - self.vertex_count);
        HomologyBasis {
            spanning_tree: tree,
            cotree_edges: cotree,
            betti,
        }
    }

    /// The signed cotree-crossing vector of a closed walk.
    pub fn cycle_class(&self, basis: &HomologyBasis, walk: &[WalkStep]) -> Result<HomologyClass> {
        if walk.is_empty() {
            return Ok(HomologyClass::zero(basis.betti));
        }
        // consecutive: head of each step must equal tail of the next
        let step_ends = |s: &WalkStep| -> Result<(usize, usize)> {
            let e = self.edges.get(s.edge).ok_or(Error::NotAWalk)?;
            Ok(if s.forward {
                (e.tail(), e.head())
            } else {
                (e.head(), e.tail())
            })
        };
        let mut prev_head = step_ends(&walk[0])?.1;
        for s in &walk[1..] {
            let (tail, head) = step_ends(s)?;
            if tail != prev_head {
                return Err(Error::NotAWalk);
            }
            prev_head = head;
        }
        if step_ends(&walk[0])?.0 != prev_head {
            return Err(Error::NotClosed);
        }
        let mut coords = vec![0i64; basis.betti];
        for s in walk {
            if let Some(j) = basis.cotree_index(s.edge) {
                coords[j] += if s.forward { 1 } else { -1 };
            }
        }
        Ok(HomologyClass(coords))
    }

    /// Length of a walk (sum of traversed edge weights, unsigned).
    pub fn walk_length(&self, walk: &[WalkStep]) -> Q {
        walk.iter()
            .map(|s| self.edges[s.edge].weight.clone())
            .sum()
    }

    /// The closed walk realizing the j-th basis class: cotree edge j
    /// forward, then back through the tree.
    pub fn fundamental_walk(&self, basis: &HomologyBasis, j: usize) -> Vec<WalkStep> {
        let e = basis.cotree_edges[j];
        let edge = &self.edges[e];
        if edge.is_loop() {
            return vec![WalkStep::forward(e)];
        }
        let mut walk = vec![WalkStep::forward(e)];
        walk.extend(self.tree_path(basis, edge.head(), edge.tail()));
        walk
    }

    /// Walk through tree edges from `from` to `to`.
    pub fn tree_path(&self, basis: &HomologyBasis, from: usize, to: usize) -> Vec<WalkStep> {
        if from == to {
            return Vec::new();
        }
        // BFS in the spanning tree
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_count];
        for &i in &basis.spanning_tree {
            let e = &self.edges[i];
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::from([from]);
        let mut seen = vec![false; self.vertex_count];
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(w, i) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, i));
                    queue.push_back(w);
                }
            }
        }
        let mut steps = Vec::new();
        let mut v = to;
        while v != from {
            let (p, i) = prev[v].expect("spanning tree connects all vertices");
            let e = &self.edges[i];
            steps.push(WalkStep {
                edge: i,
                forward: e.tail() == p,
            });
            v = p;
        }
        steps.reverse();
        steps
    }
}

impl HomologyBasis {
    pub fn betti(&self) -> usize {
        self.betti
    }

    pub fn spanning_tree(&self) -> &[usize] {
        &self.spanning_tree
    }

    pub fn cotree_edges(&self) -> &[usize] {
        &self.cotree_edges
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.spanning_tree.binary_search(&edge).is_ok()
    }

    /// Position of `edge` among the cotree edges, if it is one.
    pub fn cotree_index(&self, edge: usize) -> Option<usize> {
        self.cotree_edges.binary_search(&edge).ok()
    }
}

/// The sup-log distance between two weight functions on the same graph:
/// `max_e |ln(w1(e)/w2(e))|`.
///
/// Lengths of any fixed walk under the two weights differ by at most a
/// factor `e^rho`, so full length spectra are `rho`-close.
pub fn weight_distance(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<f64> {
    if g1.vertex_count != g2.vertex_count || g1.edges.len() != g2.edges.len() {
        return Err(Error::MismatchedEdgeSets);
    }
    for (a, b) in g1.edges.iter().zip(&g2.edges) {
        if (a.u, a.v) != (b.u, b.v) {
            return Err(Error::MismatchedEdgeSets);
        }
    }
    let mut rho: f64 = 0.0;
    for (a, b) in g1.edges.iter().zip(&g2.edges) {
        let ratio = q_to_f64(&a.weight) / q_to_f64(&b.weight);
        rho = rho.max(ratio.ln().abs());
    }
    Ok(rho)
}

/// Parses the graph text format:
///
/// ```text
/// # comment
/// graph <vertex_count>
/// u v w
/// ```
///
/// with `w` a positive decimal or fraction `p/q`. Edge index = order of
/// appearance.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let vertex_count: usize = header
        .strip_prefix("graph")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected `graph <vertex_count>`, got `{header}`")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (u, v, w) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), Some(w), None) => (u, v, w),
            _ => return Err(Error::Parse(format!("expected `u v w`, got `{line}`"))),
        };
        let u: usize = u.parse().map_err(|_| Error::Parse(format!("bad vertex id `{u}`")))?;
        let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad vertex id `{v}`")))?;
        let w = parse_rational(w)?;
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight);
        }
        edges.push((u, v, w));
    }
    if edges.is_empty() && vertex_count != 1 {
        return Err(Error::Parse("no edges".into()));
    }
    WeightedGraph::new(vertex_count, edges)
}

/// Renders a graph in the text format accepted by [`parse_graph`].
pub fn format_graph(g: &WeightedGraph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, format_rational(&e.weight)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qi;

    pub fn figure_eight() -> WeightedGraph {
        WeightedGraph::from_edges(vec![(0, 0, qi(1)), (0, 0, qi(1))]).unwrap()
    }

    pub fn theta_graph() -> WeightedGraph {
        WeightedGraph::from_edges(vec![(0, 1, qi(1)), (0, 1, qi(1)), (0, 1, qi(1))]).unwrap()
    }

    #[test]
    fn builds_figure_eight() {
        let g = figure_eight();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        let basis = g.homology_basis();
        assert_eq!(basis.betti(), 2);
        assert_eq!(basis.cotree_edges(), &[0, 1]);
    }

    #[test]
    fn builds_theta_graph() {
        let g = theta_graph();
        assert_eq!(g.vertex_count(), 2);
        let basis = g.homology_basis();
        assert_eq!(basis.betti(), 2);
        assert_eq!(basis.spanning_tree(), &[0]);
        assert_eq!(basis.cotree_edges(), &[1, 2]);
    }

    #[test]
    fn single_edge_is_a_tree() {
        let g = WeightedGraph::from_edges(vec![(0, 1, qi(1))]).unwrap();
        let basis = g.homology_basis();
        assert_eq!(basis.betti(), 0);
        assert!(basis.cotree_edges().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            WeightedGraph::from_edges(vec![(0, 1, qi(0))]),
            Err(Error::NonPositiveWeight)
        );
        assert_eq!(
            WeightedGraph::new(1, vec![(0, 3, qi(1))]),
            Err(Error::BadVertexId(3, 1))
        );
        assert_eq!(
            WeightedGraph::new(3, vec![(0, 1, qi(1))]),
            Err(Error::DisconnectedGraph)
        );
    }

    #[test]
    fn cycle_class_counts_cotree_crossings() {
        let g = theta_graph();
        let basis = g.homology_basis();
        // e0 forward (0 -> 1) then e1 backward (1 -> 0): crosses cotree edge
        // e1 against its canonical direction.
        let walk = [WalkStep::forward(0), WalkStep::backward(1)];
        let class = g.cycle_class(&basis, &walk).unwrap();
        assert_eq!(class, HomologyClass(vec![-1, 0]));
    }

    #[test]
    fn tree_walks_are_null_homologous() {
        let g = theta_graph();
        let basis = g.homology_basis();
        let walk = [WalkStep::forward(0), WalkStep::backward(0)];
        assert!(g.cycle_class(&basis, &walk).unwrap().is_zero());
    }

    #[test]
    fn concatenation_doubles_coords() {
        let g = theta_graph();
        let basis = g.homology_basis();
        let walk = vec![WalkStep::forward(0), WalkStep::backward(1)];
        let mut doubled = walk.clone();
        doubled.extend(walk.iter().copied());
        let once = g.cycle_class(&basis, &walk).unwrap();
        let twice = g.cycle_class(&basis, &doubled).unwrap();
        assert_eq!(twice, once.scaled(2));
    }

    #[test]
    fn walk_validation() {
        let g = theta_graph();
        let basis = g.homology_basis();
        // not closed: single non-loop edge
        assert_eq!(
            g.cycle_class(&basis, &[WalkStep::forward(0)]),
            Err(Error::NotClosed)
        );
        // not consecutive: forward then forward again jumps 1 -> 0
        assert_eq!(
            g.cycle_class(&basis, &[WalkStep::forward(0), WalkStep::forward(1)]),
            Err(Error::NotAWalk)
        );
    }

    #[test]
    fn fundamental_walks_realize_unit_vectors() {
        for g in [figure_eight(), theta_graph()] {
            let basis = g.homology_basis();
            for j in 0..basis.betti() {
                let walk = g.fundamental_walk(&basis, j);
                let class = g.cycle_class(&basis, &walk).unwrap();
                let mut unit = vec![0i64; basis.betti()];
                unit[j] = 1;
                assert_eq!(class, HomologyClass(unit));
            }
        }
    }

    #[test]
    fn weight_distance_examples() {
        let g = theta_graph();
        assert_eq!(weight_distance(&g, &g).unwrap(), 0.0);
        let g2 = g.reweighted(&[qi(2), qi(1), qi(1)]).unwrap();
        let rho = weight_distance(&g, &g2).unwrap();
        assert!((rho - 2f64.ln()).abs() < 1e-15);
        // symmetric
        assert_eq!(rho, weight_distance(&g2, &g).unwrap());
    }

    #[test]
    fn graph_format_round_trip() {
        let text = "# theta\ngraph 2\n0 1 1\n0 1 1/2\n0 1 1.5\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edges()[1].weight, crate::num::q(1, 2));
        assert_eq!(g.edges()[2].weight, crate::num::q(3, 2));
        let g2 = parse_graph(&format_graph(&g)).unwrap();
        assert_eq!(g, g2);
    }
}
