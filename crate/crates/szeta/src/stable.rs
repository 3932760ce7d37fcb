//! The exact stable-norm unit ball of a weighted graph.
//!
//! The unit ball is the convex hull of the normalized simple-cycle classes
//! `±class(c)/length(c)`. All geometry is carried out in exact rational
//! arithmetic: the hull is a beneath-beyond incremental hull over `Q`, the
//! gauge is a maximum of facet functionals, and the volume is the sum of the
//! cones over the boundary triangulation.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{HomologyBasis, HomologyClass, WalkStep, WeightedGraph};
use crate::linalg::{det, dot, hyperplane, neg, rank};
use crate::num::{format_rational, parse_rational, q_to_f64, Q};

/// A simple cycle: a closed walk repeating no vertex except the base point.
///
/// Each cycle is reported in one orientation only (the one whose class is
/// lexicographically positive); its reversal is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCycle {
    pub steps: Vec<WalkStep>,
    pub class: HomologyClass,
    pub length: Q,
}

/// The unit ball of the stable norm: a centrally symmetric rational polytope
/// with facets `{x : <f, x> = 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableBall {
    dim: usize,
    vertices: Vec<Vec<Q>>,
    facets: Vec<Vec<Q>>,
    volume: Q,
}

/// Enumerates all simple cycles by backtracking from each base vertex,
/// visiting only vertices with id >= the base. Loops count as cycles of one
/// edge; a pair of parallel edges is a cycle of two.
pub fn simple_cycles(g: &WeightedGraph, basis: &HomologyBasis) -> Vec<SimpleCycle> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            adj[e.u].push((i, e.u));
        } else {
            adj[e.u].push((i, e.v));
            adj[e.v].push((i, e.u));
        }
    }

    let mut found: Vec<SimpleCycle> = Vec::new();
    let mut path: Vec<WalkStep> = Vec::new();
    let mut used_edges = vec![false; g.edge_count()];
    let mut visited = vec![false; n];

    fn extend(
        g: &WeightedGraph,
        basis: &HomologyBasis,
        adj: &[Vec<(usize, usize)>],
        start: usize,
        current: usize,
        path: &mut Vec<WalkStep>,
        used_edges: &mut [bool],
        visited: &mut [bool],
        found: &mut Vec<SimpleCycle>,
    ) {
        for &(edge, other) in &adj[current] {
            if used_edges[edge] {
                continue;
            }
            let forward = g.edges()[edge].tail() == current;
            if other == start {
                path.push(WalkStep { edge, forward });
                let class = g
                    .cycle_class(basis, path)
                    .expect("cycle enumeration produces closed walks");
                if class.is_lex_positive() {
                    found.push(SimpleCycle {
                        steps: path.clone(),
                        class,
                        length: g.walk_length(path),
                    });
                }
                path.pop();
            }
            if other > start && !visited[other] {
                visited[other] = true;
                used_edges[edge] = true;
                path.push(WalkStep { edge, forward });
                extend(g, basis, adj, start, other, path, used_edges, visited, found);
                path.pop();
                used_edges[edge] = false;
                visited[other] = false;
            }
        }
    }

    for start in 0..n {
        visited[start] = true;
        extend(
            g,
            basis,
            &adj,
            start,
            start,
            &mut path,
            &mut used_edges,
            &mut visited,
            &mut found,
        );
        visited[start] = false;
    }

    found.sort_by(|a, b| a.class.cmp(&b.class));
    debug_assert!(found.windows(2).all(|w| w[0].class != w[1].class));
    found
}

// ---------------------------------------------------------------------------
// exact incremental convex hull
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Piece {
    verts: Vec<usize>, // b point indices, sorted
    normal: Vec<Q>,
    offset: Q, // hull side is <normal, x> <= offset
}

fn oriented_piece(points: &[Vec<Q>], mut verts: Vec<usize>, interior: &[Q]) -> Piece {
    verts.sort_unstable();
    let pts: Vec<Vec<Q>> = verts.iter().map(|&i| points[i].clone()).collect();
    let (mut normal, mut offset) = hyperplane(&pts).expect("facet points affinely independent");
    let side = dot(&normal, interior);
    debug_assert!(side != offset, "interior point on facet plane");
    if side > offset {
        normal = neg(&normal);
        offset = -offset;
    }
    Piece { verts, normal, offset }
}

/// Triangulated boundary of the convex hull of `points` (must be
/// full-dimensional). Points exactly on a hyperplane are treated as inside.
fn hull_boundary(points: &[Vec<Q>], dim: usize) -> Result<Vec<Piece>> {
    // greedy affinely independent simplex
    let mut simplex: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if simplex.is_empty() {
            simplex.push(i);
            continue;
        }
        let base = &points[simplex[0]];
        let mut diffs: Vec<Vec<Q>> = simplex[1..]
            .iter()
            .map(|&j| crate::linalg::sub(&points[j], base))
            .collect();
        diffs.push(crate::linalg::sub(p, base));
        if rank(&diffs) == simplex.len() {
            simplex.push(i);
        }
        if simplex.len() == dim + 1 {
            break;
        }
    }
    if simplex.len() < dim + 1 {
        return Err(Error::DegenerateBall);
    }

    let interior: Vec<Q> = (0..dim)
        .map(|c| {
            simplex.iter().map(|&i| points[i][c].clone()).sum::<Q>()
                / Q::from_integer((dim as i64 + 1).into())
        })
        .collect();

    let mut pieces: Vec<Piece> = (0..=dim)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &i)| i)
                .collect();
            oriented_piece(points, verts, &interior)
        })
        .collect();

    for p_idx in 0..points.len() {
        if simplex.contains(&p_idx) {
            continue;
        }
        let p = &points[p_idx];
        let visible: Vec<usize> = (0..pieces.len())
            .filter(|&f| dot(&pieces[f].normal, p) > pieces[f].offset)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // horizon ridges appear in exactly one visible piece
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &f in &visible {
            let vs = &pieces[f].verts;
            for skip in 0..vs.len() {
                let ridge: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &i)| i)
                    .collect();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort_unstable();

        let visible_set: std::collections::HashSet<usize> = visible.into_iter().collect();
        let mut next: Vec<Piece> = pieces
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !visible_set.contains(i))
            .map(|(_, f)| f)
            .collect();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p_idx);
            next.push(oriented_piece(points, verts, &interior));
        }
        pieces = next;
    }
    Ok(pieces)
}

impl StableBall {
    /// Convex hull of `points` together with their negations.
    ///
    /// Fails with `DegenerateBall` when the symmetrized set does not span,
    /// i.e. when the gauge would only be a seminorm.
    pub fn from_points(dim: usize, points: &[Vec<Q>]) -> Result<StableBall> {
        if dim == 0 {
            return Err(Error::DegenerateBall);
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(p.len(), dim));
            }
        }
        let mut all: Vec<Vec<Q>> = Vec::with_capacity(points.len() * 2);
        for p in points {
            all.push(p.clone());
            all.push(neg(p));
        }
        all.sort();
        all.dedup();
        all.retain(|p| p.iter().any(|x| !x.is_zero()));
        if all.is_empty() {
            return Err(Error::DegenerateBall);
        }

        let pieces = hull_boundary(&all, dim)?;

        // volume: cones over boundary simplices from the origin
        let mut volume = Q::zero();
        for piece in &pieces {
            let rows: Vec<Vec<Q>> = piece.verts.iter().map(|&i| all[i].clone()).collect();
            volume += det(&rows).abs();
        }
        let mut factorial = Q::one();
        for k in 2..=dim as i64 {
            factorial *= Q::from_integer(k.into());
        }
        volume /= factorial;

        // facet functionals <f, x> = 1, deduped across coplanar pieces
        let mut facets: Vec<Vec<Q>> = Vec::new();
        for piece in &pieces {
            assert!(
                piece.offset.is_positive(),
                "origin interior to a full-dimensional symmetric hull"
            );
            let f: Vec<Q> = piece.normal.iter().map(|a| a / &piece.offset).collect();
            facets.push(f);
        }
        facets.sort();
        facets.dedup();

        // vertices: points with gauge exactly 1 whose active facets span
        let mut vertices: Vec<Vec<Q>> = Vec::new();
        let one = Q::one();
        for p in &all {
            let active: Vec<Vec<Q>> = facets
                .iter()
                .filter(|f| dot(f, p) == one)
                .cloned()
                .collect();
            if active.len() >= dim && rank(&active) == dim {
                vertices.push(p.clone());
            }
        }
        vertices.sort();

        Ok(StableBall {
            dim,
            vertices,
            facets,
            volume,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<Q>] {
        &self.facets
    }

    /// Exact volume with respect to the lattice `Z^b` of covolume 1.
    pub fn volume(&self) -> &Q {
        &self.volume
    }

    /// The gauge (Minkowski functional) of the ball: `max_f <f, x>`.
    pub fn gauge(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.dim);
        self.facets
            .iter()
            .map(|f| dot(f, x))
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Gauge of an integer class.
    pub fn gauge_class(&self, class: &HomologyClass) -> Q {
        let x: Vec<Q> = class.0.iter().map(|&c| Q::from_integer(c.into())).collect();
        self.gauge(&x)
    }

    /// Per-axis extent: `max_v |v_i|` over vertices, the half-width of the
    /// bounding box of the ball.
    pub fn extent(&self) -> Vec<Q> {
        (0..self.dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].abs())
                    .max()
                    .unwrap_or_else(Q::zero)
            })
            .collect()
    }
}

/// The stable ball of a weighted graph.
pub fn stable_ball(g: &WeightedGraph, basis: &HomologyBasis) -> Result<StableBall> {
    let b = basis.betti();
    if b == 0 {
        return Err(Error::DegenerateBall);
    }
    let cycles = simple_cycles(g, basis);
    let points: Vec<Vec<Q>> = cycles
        .iter()
        .map(|c| {
            c.class
                .0
                .iter()
                .map(|&coord| Q::from_integer(coord.into()) / &c.length)
                .collect()
        })
        .collect();
    StableBall::from_points(b, &points)
}

/// The stable norm as the gauge of the unit ball.
pub fn stable_norm(ball: &StableBall, x: &[Q]) -> Q {
    ball.gauge(x)
}

/// Independent route to the stable norm: the weighted cost of the real
/// circulation with prescribed cotree coordinates.
///
/// Vertex conservation forces the tree-edge flows once the cotree flows are
/// fixed, so the minimizer is the unique circulation
/// `x = sum_j theta_j C_j` over the fundamental circulations `C_j`, and the
/// norm is `sum_e w_e |x_e|`.
pub fn stable_norm_lp(g: &WeightedGraph, basis: &HomologyBasis, class: &HomologyClass) -> Q {
    assert_eq!(class.0.len(), basis.betti());
    let mut flow: Vec<Q> = vec![Q::zero(); g.edge_count()];
    for (j, &coeff) in class.0.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let c = Q::from_integer(coeff.into());
        for step in g.fundamental_walk(basis, j) {
            if step.forward {
                flow[step.edge] += &c;
            } else {
                flow[step.edge] -= &c;
            }
        }
    }
    g.edges()
        .iter()
        .zip(&flow)
        .map(|(e, x)| &e.weight * x.abs())
        .sum()
}

/// Exact volume of the ball (computed by central triangulation at
/// construction time).
pub fn ball_volume(ball: &StableBall) -> Q {
    ball.volume().clone()
}

/// The Banach–Mazur-type distance `ln c12` between two norms, where `c12`
/// is the smallest constant with `c12^{-1}||.||_1 <= ||.||_2 <= c12||.||_1`.
pub fn banach_distance(ball1: &StableBall, ball2: &StableBall) -> Result<f64> {
    if ball1.dim() != ball2.dim() {
        return Err(Error::DimensionMismatch(ball1.dim(), ball2.dim()));
    }
    let mut c = Q::zero();
    for v in ball1.vertices() {
        c = c.max(ball2.gauge(v));
    }
    for u in ball2.vertices() {
        c = c.max(ball1.gauge(u));
    }
    Ok(q_to_f64(&c).ln())
}

/// Image of the ball under an invertible rational matrix (rows act on
/// column vectors). The volume is multiplied by `|det h|` exactly.
pub fn gl_transform(ball: &StableBall, h: &[Vec<Q>]) -> Result<StableBall> {
    let b = ball.dim();
    if h.len() != b || h.iter().any(|row| row.len() != b) {
        return Err(Error::DimensionMismatch(h.len(), b));
    }
    if det(h).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<Vec<Q>> = ball
        .vertices()
        .iter()
        .map(|v| h.iter().map(|row| dot(row, v)).collect())
        .collect();
    StableBall::from_points(b, &images)
}

/// Asymptotic homology volume of the graph: `Vol(ball) * total edge weight`.
///
/// The total edge weight plays the role of the volume of the graph; this is
/// the 1-dimensional reading of `Omega_H = V(g) vol(M, g)`.
pub fn asymptotic_volume(g: &WeightedGraph, basis: &HomologyBasis) -> Result<Q> {
    let ball = stable_ball(g, basis)?;
    Ok(ball.volume() * g.total_weight())
}

/// Ball text export: `dim b`, then `vertex ...` and `facet ...` lines with
/// exact fractions.
pub fn format_ball(ball: &StableBall) -> String {
    let mut out = format!("dim {}\n", ball.dim());
    for v in ball.vertices() {
        out.push_str("vertex");
        for x in v {
            out.push(' ');
            out.push_str(&format_rational(x));
        }
        out.push('\n');
    }
    for f in ball.facets() {
        out.push_str("facet");
        for x in f {
            out.push(' ');
            out.push_str(&format_rational(x));
        }
        out.push('\n');
    }
    out
}

/// Re-reads a ball export, reconstructing facets and volume from the listed
/// vertices.
pub fn parse_ball(text: &str) -> Result<StableBall> {
    let mut dim: Option<usize> = None;
    let mut vertices: Vec<Vec<Q>> = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            dim = rest.trim().parse().ok();
            if dim.is_none() {
                return Err(Error::Parse(format!("bad dim line `{line}`")));
            }
        } else if let Some(rest) = line.strip_prefix("vertex") {
            let coords: Result<Vec<Q>> = rest.split_whitespace().map(parse_rational).collect();
            vertices.push(coords?);
        } else if line.starts_with("facet") {
            // facets are recomputed from the vertices
        } else {
            return Err(Error::Parse(format!("unrecognized line `{line}`")));
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse("missing dim header".into()))?;
    StableBall::from_points(dim, &vertices)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::num::{q, qi};

    /// Brute-force oracle: a simple cycle is an edge subset in which every
    /// incident vertex has degree exactly two (loops count twice) and whose
    /// support is connected.
    fn cycle_edge_sets_oracle(g: &WeightedGraph) -> Vec<Vec<usize>> {
        let m = g.edge_count();
        let mut out = Vec::new();
        for mask in 1u64..(1 << m) {
            let edges: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let mut degree = vec![0usize; g.vertex_count()];
            for &i in &edges {
                let e = &g.edges()[i];
                degree[e.u] += 1;
                degree[e.v] += 1;
            }
            let support: Vec<usize> = (0..g.vertex_count()).filter(|&v| degree[v] > 0).collect();
            if !support.iter().all(|&v| degree[v] == 2) {
                continue;
            }
            // connectivity of the support via the chosen edges
            let mut seen = vec![false; g.vertex_count()];
            let mut stack = vec![support[0]];
            seen[support[0]] = true;
            while let Some(v) = stack.pop() {
                for &i in &edges {
                    let e = &g.edges()[i];
                    for w in [e.u, e.v] {
                        if (e.u == v || e.v == v) && !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            if support.iter().all(|&v| seen[v]) {
                out.push(edges);
            }
        }
        out
    }

    #[test]
    fn simple_cycles_match_oracle() {
        for g in [figure_eight(), theta_graph(), dumbbell(), k4()] {
            let basis = g.homology_basis();
            let cycles = simple_cycles(&g, &basis);
            let oracle = cycle_edge_sets_oracle(&g);
            assert_eq!(cycles.len(), oracle.len(), "cycle count");
            let mut got: Vec<Vec<usize>> = cycles
                .iter()
                .map(|c| {
                    let mut e: Vec<usize> = c.steps.iter().map(|s| s.edge).collect();
                    e.sort_unstable();
                    e
                })
                .collect();
            got.sort();
            let mut want = oracle;
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn figure_eight_cycles() {
        let g = figure_eight();
        let basis = g.homology_basis();
        let cycles = simple_cycles(&g, &basis);
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].class, HomologyClass(vec![0, 1]));
        assert_eq!(cycles[1].class, HomologyClass(vec![1, 0]));
        assert!(cycles.iter().all(|c| c.length == qi(1)));
    }

    #[test]
    fn theta_cycles() {
        let g = theta_graph();
        let basis = g.homology_basis();
        let cycles = simple_cycles(&g, &basis);
        assert_eq!(cycles.len(), 3);
        let classes: Vec<_> = cycles.iter().map(|c| c.class.clone()).collect();
        assert!(classes.contains(&HomologyClass(vec![1, 0])));
        assert!(classes.contains(&HomologyClass(vec![0, 1])));
        assert!(classes.contains(&HomologyClass(vec![1, -1])));
        assert!(cycles.iter().all(|c| c.length == qi(2)));
    }

    #[test]
    fn tree_has_no_cycles() {
        let g = WeightedGraph::from_edges(vec![(0, 1, qi(1))]).unwrap();
        let basis = g.homology_basis();
        assert!(simple_cycles(&g, &basis).is_empty());
        assert_eq!(stable_ball(&g, &basis), Err(Error::DegenerateBall));
    }

    /// Shoelace oracle for 2-d hull volumes.
    fn shoelace(vertices: &[Vec<Q>]) -> Q {
        // sort CCW by angle around the origin
        let mut vs: Vec<Vec<Q>> = vertices.to_vec();
        vs.sort_by(|a, b| {
            let (ax, ay) = (q_to_f64(&a[0]), q_to_f64(&a[1]));
            let (bx, by) = (q_to_f64(&b[0]), q_to_f64(&b[1]));
            ay.atan2(ax).partial_cmp(&by.atan2(bx)).unwrap()
        });
        let n = vs.len();
        let mut twice_area = Q::zero();
        for i in 0..n {
            let j = (i + 1) % n;
            twice_area += &vs[i][0] * &vs[j][1] - &vs[j][0] * &vs[i][1];
        }
        twice_area.abs() / qi(2)
    }

    #[test]
    fn figure_eight_ball_is_cross_polytope() {
        let g = figure_eight();
        let ball = stable_ball(&g, &g.homology_basis()).unwrap();
        assert_eq!(ball.vertices().len(), 4);
        assert!(ball.vertices().contains(&vec![qi(1), qi(0)]));
        assert!(ball.vertices().contains(&vec![qi(0), qi(-1)]));
        assert_eq!(*ball.volume(), qi(2));
        assert_eq!(shoelace(ball.vertices()), qi(2));
    }

    #[test]
    fn theta_ball_is_hexagon() {
        let g = theta_graph();
        let ball = stable_ball(&g, &g.homology_basis()).unwrap();
        assert_eq!(ball.vertices().len(), 6);
        for v in [
            vec![q(1, 2), qi(0)],
            vec![qi(0), q(1, 2)],
            vec![q(1, 2), q(-1, 2)],
        ] {
            assert!(ball.vertices().contains(&v), "missing vertex {v:?}");
            assert!(ball.vertices().contains(&neg(&v)));
        }
        assert_eq!(*ball.volume(), q(3, 4));
        assert_eq!(shoelace(ball.vertices()), q(3, 4));
    }

    #[test]
    fn one_loop_ball_is_segment() {
        let g = WeightedGraph::from_edges(vec![(0, 0, qi(1))]).unwrap();
        let ball = stable_ball(&g, &g.homology_basis()).unwrap();
        assert_eq!(ball.dim(), 1);
        assert_eq!(ball.vertices(), &[vec![qi(-1)], vec![qi(1)]]);
        assert_eq!(*ball.volume(), qi(2));
    }

    #[test]
    fn cube_volumes() {
        for b in 2..=4 {
            let ball = linf_ball(b);
            assert_eq!(*ball.volume(), qi(1 << b), "2^b in dim {b}");
            assert_eq!(ball.vertices().len(), 1 << b);
            assert_eq!(ball.facets().len(), 2 * b);
        }
    }

    #[test]
    fn gauge_examples() {
        let theta_ball = stable_ball(&theta_graph(), &theta_graph().homology_basis()).unwrap();
        assert_eq!(theta_ball.gauge(&[qi(1), qi(1)]), qi(4));
        assert_eq!(theta_ball.gauge(&[qi(0), qi(0)]), qi(0));
        let fig8_ball = stable_ball(&figure_eight(), &figure_eight().homology_basis()).unwrap();
        assert_eq!(fig8_ball.gauge(&[qi(3), qi(-2)]), qi(5));
    }

    #[test]
    fn gauge_agrees_with_circulation_cost() {
        for g in [figure_eight(), theta_graph(), dumbbell(), k4()] {
            let basis = g.homology_basis();
            let ball = stable_ball(&g, &basis).unwrap();
            let b = basis.betti();
            let mut coords = vec![-4i64; b];
            loop {
                let class = HomologyClass(coords.clone());
                assert_eq!(
                    ball.gauge_class(&class),
                    stable_norm_lp(&g, &basis, &class),
                    "gauge vs circulation at {coords:?}"
                );
                let mut k = 0;
                loop {
                    if k == b {
                        return;
                    }
                    coords[k] += 1;
                    if coords[k] <= 4 {
                        break;
                    }
                    coords[k] = -4;
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn lp_examples() {
        let g = figure_eight();
        let basis = g.homology_basis();
        assert_eq!(stable_norm_lp(&g, &basis, &HomologyClass(vec![3, -2])), qi(5));
        let t = theta_graph();
        let tb = t.homology_basis();
        assert_eq!(stable_norm_lp(&t, &tb, &HomologyClass(vec![1, 0])), qi(2));
        assert_eq!(stable_norm_lp(&t, &tb, &HomologyClass(vec![0, 0])), qi(0));
    }

    #[test]
    fn combinatorial_norms_are_integers() {
        for g in [figure_eight(), theta_graph(), dumbbell(), k4()] {
            let basis = g.homology_basis();
            let ball = stable_ball(&g, &basis).unwrap();
            let b = basis.betti();
            for trial in 0..50u64 {
                let coords: Vec<i64> = (0..b)
                    .map(|j| ((trial.wrapping_mul(2654435761).wrapping_add(j as u64 * 97)) % 9) as i64 - 4)
                    .collect();
                let class = HomologyClass(coords);
                if class.is_zero() {
                    continue;
                }
                let norm = ball.gauge_class(&class);
                assert!(norm.is_integer(), "norm {norm} not integral");
                assert!(norm.is_positive());
            }
        }
    }

    #[test]
    fn vertex_count_bound() {
        for g in [figure_eight(), theta_graph(), dumbbell(), k4()] {
            let basis = g.homology_basis();
            let ball = stable_ball(&g, &basis).unwrap();
            let bound = 2 * ((1usize << basis.betti()) - 1);
            assert!(ball.vertices().len() <= bound);
        }
    }

    #[test]
    fn banach_distance_examples() {
        let fig8 = stable_ball(&figure_eight(), &figure_eight().homology_basis()).unwrap();
        assert_eq!(banach_distance(&fig8, &fig8).unwrap(), 0.0);

        // double the ball
        let doubled = gl_transform(&fig8, &[vec![qi(2), qi(0)], vec![qi(0), qi(2)]]).unwrap();
        assert!((banach_distance(&fig8, &doubled).unwrap() - 2f64.ln()).abs() < 1e-15);

        // l_inf vs l_1 in dimension 2
        let linf = linf_ball(2);
        assert!((banach_distance(&linf, &fig8).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn gl_transform_scales_volume() {
        let fig8 = stable_ball(&figure_eight(), &figure_eight().homology_basis()).unwrap();
        let id = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert_eq!(gl_transform(&fig8, &id).unwrap(), fig8);
        let h = vec![vec![qi(2), qi(0)], vec![qi(0), qi(1)]];
        let image = gl_transform(&fig8, &h).unwrap();
        assert_eq!(*image.volume(), qi(4));
        let singular = vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]];
        assert_eq!(gl_transform(&fig8, &singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn asymptotic_volume_examples() {
        let g = figure_eight();
        assert_eq!(asymptotic_volume(&g, &g.homology_basis()).unwrap(), qi(4));
        let t = theta_graph();
        assert_eq!(asymptotic_volume(&t, &t.homology_basis()).unwrap(), q(9, 4));
    }

    #[test]
    fn asymptotic_volume_homogeneity() {
        let t = theta_graph();
        let base = asymptotic_volume(&t, &t.homology_basis()).unwrap();
        for lambda in [2i64, 3] {
            let scaled = t
                .reweighted(&[qi(lambda), qi(lambda), qi(lambda)])
                .unwrap();
            let omega = asymptotic_volume(&scaled, &scaled.homology_basis()).unwrap();
            // Omega_H(lambda w) = lambda^{1-b} Omega_H(w), b = 2
            assert_eq!(omega, &base * q(1, lambda));
        }
    }

    #[test]
    fn ball_export_round_trip() {
        let g = theta_graph();
        let ball = stable_ball(&g, &g.homology_basis()).unwrap();
        let text = format_ball(&ball);
        let back = parse_ball(&text).unwrap();
        assert_eq!(ball, back);
    }
}
