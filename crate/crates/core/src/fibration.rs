//! Circle-valued maps from positive edge weights.
//!
//! A direction whose tetrahedra are totally ordered gives one *triangle
//! equation* per face `a -> b -> c`: the long edge weighs as much as the two
//! short edges together, `x_ab + x_bc - x_ac = 0`. A positive integer
//! solution, perturbed by small distinct vertex offsets, defines a map to the
//! circle that is affine on every simplex and sends the vertices to distinct
//! points. That map is a fibration when its zero level in every vertex link
//! is a single circle, and the preimage of a generic point is then a normal
//! surface, the fiber.
//!
//! The circumference of the circle is the gcd `g` of the weight sums around
//! all cycles of the 1-skeleton (or `1` when every cycle sum vanishes), so the
//! map is primitive and its fibers are connected whenever the bundle's are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::direction::Direction;
use crate::graph::UnionFind;
use crate::normal::{quad_joining, NormalVector};
use crate::simplex::{solve_positive_kernel, FeasibilityOutcome, IntMatrix, SolverError};
use crate::triangulation::{Tet, Triangulation, VertexId};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("tetrahedron {tet:?} contains the directed 3-cycle {cycle:?}")]
    NoTotalOrder { tet: Tet, cycle: [VertexId; 3] },
    #[error("bad weights: {0}")]
    BadWeights(WeightProblem),
    #[error("theta {theta} is the phase of vertex {vertex}; try {suggested}")]
    ThetaCollision {
        theta: Box<Rational>,
        vertex: VertexId,
        suggested: Box<Rational>,
    },
    #[error("weights file line {line}: {message}")]
    WeightsSyntax { line: usize, message: String },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightProblem {
    WrongLength { expected: usize, found: usize },
    NonPositive { tail: VertexId, head: VertexId, weight: i64 },
    FaceEquation { face: [VertexId; 3], residual: i64 },
}

impl fmt::Display for WeightProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => write!(f, "{found} weights for {expected} edges"),
            Self::NonPositive { tail, head, weight } => write!(f, "edge {tail}->{head} has weight {weight}"),
            Self::FaceEquation { face, residual } => write!(f, "face {face:?} has residual {residual}"),
        }
    }
}

/// One row per face, one column per edge (canonical orders).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleSystem {
    /// Each face listed in direction order `a -> b -> c`.
    pub faces: Vec<[VertexId; 3]>,
    pub matrix: IntMatrix,
}

fn require_total_order(t: &Triangulation, d: &Direction) -> Result<(), FibrationError> {
    for tet in t.tets() {
        if let Err(cycle) = d.tet_order(tet) {
            return Err(FibrationError::NoTotalOrder { tet: *tet, cycle });
        }
    }
    Ok(())
}

pub fn triangle_system(t: &Triangulation, d: &Direction) -> Result<TriangleSystem, FibrationError> {
    require_total_order(t, d)?;
    let idx = |a, b| t.edge_index(a, b).expect("face edge");
    let mut faces = Vec::with_capacity(t.faces().len());
    let mut rows = Vec::with_capacity(t.faces().len());
    for f in t.faces() {
        let [a, b, c] = d.face_order(f).expect("ordered tets have ordered faces");
        let mut row = vec![0i64; t.edges().len()];
        row[idx(a, b)] += 1;
        row[idx(b, c)] += 1;
        row[idx(a, c)] -= 1;
        faces.push([a, b, c]);
        rows.push(row);
    }
    let matrix = IntMatrix::new(t.edges().len(), rows)?;
    Ok(TriangleSystem { faces, matrix })
}

/// Builds the triangle system and decides it.
pub fn solve_triangle_system(
    t: &Triangulation,
    d: &Direction,
) -> Result<(TriangleSystem, FeasibilityOutcome), FibrationError> {
    let system = triangle_system(t, d)?;
    let outcome = solve_positive_kernel(&system.matrix)?;
    Ok((system, outcome))
}

/// Checks that `weights` (indexed like `t.edges()`, measured along `d`) are
/// positive and satisfy every triangle equation.
pub fn check_weights(t: &Triangulation, d: &Direction, weights: &[i64]) -> Result<(), FibrationError> {
    let bad = |p| Err(FibrationError::BadWeights(p));
    if weights.len() != t.edges().len() {
        return bad(WeightProblem::WrongLength {
            expected: t.edges().len(),
            found: weights.len(),
        });
    }
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0 {
            let (tail, head) = d.arc(i);
            return bad(WeightProblem::NonPositive { tail, head, weight: w });
        }
    }
    check_face_equations(t, d, weights)
}

/// Only the triangle equations; weights may have any sign.
pub fn check_face_equations(t: &Triangulation, d: &Direction, weights: &[i64]) -> Result<(), FibrationError> {
    let system = triangle_system(t, d)?;
    if weights.len() != t.edges().len() {
        return Err(FibrationError::BadWeights(WeightProblem::WrongLength {
            expected: t.edges().len(),
            found: weights.len(),
        }));
    }
    for (face, residual) in system.faces.iter().zip(system.matrix.apply(weights)) {
        if residual != 0 {
            return Err(FibrationError::BadWeights(WeightProblem::FaceEquation {
                face: *face,
                residual: residual as i64,
            }));
        }
    }
    Ok(())
}

/// Integer potential along a spanning forest and the gcd of all cycle sums.
///
/// `potential[j]` is the weight of the forest path from the root of `j`'s
/// component, signed by the direction of travel; the second value is the gcd
/// of `potential[u] + w - potential[v]` over all arcs `u -> v` of weight `w`.
pub fn cycle_potential(t: &Triangulation, d: &Direction, weights: &[i64]) -> (Vec<i64>, i64) {
    let n = t.vertices().len();
    // Undirected adjacency: (neighbour, signed weight).
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut arcs = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let (u, v) = d.arc(i);
        let (ui, vi) = (t.vertex_index(u).unwrap(), t.vertex_index(v).unwrap());
        adj[ui].push((vi, w));
        adj[vi].push((ui, -w));
        arcs.push((ui, vi, w));
    }
    let mut potential = vec![0i64; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, w) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    potential[y] = potential[x] + w;
                    queue.push_back(y);
                }
            }
        }
    }
    let g = arcs
        .iter()
        .fold(0i64, |g, &(u, v, w)| g.gcd(&(potential[u] + w - potential[v])));
    (potential, g)
}

/// Positive edge weights plus small distinct vertex offsets: a piecewise
/// affine map to the circle of circumference [`FibrationMap::circumference`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationMap {
    /// Per edge (canonical order), measured tail to head along the direction.
    pub weights: Vec<i64>,
    /// Per vertex (ascending id): `rank / (2 V maxWeight + 1)`.
    #[serde(serialize_with = "serialize_rationals")]
    pub offsets: Vec<Rational>,
    /// gcd of all cycle sums of the weights; `0` if they all vanish.
    pub period: i64,
    /// Integer part of each vertex height, reduced modulo the circumference.
    pub potential: Vec<i64>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl FibrationMap {
    pub fn circumference(&self) -> i64 {
        if self.period == 0 {
            1
        } else {
            self.period
        }
    }

    /// Weight of edge `i` plus the offset change from tail to head.
    pub fn adjusted_length(&self, t: &Triangulation, d: &Direction, i: usize) -> Rational {
        let (u, v) = d.arc(i);
        let (ui, vi) = (t.vertex_index(u).unwrap(), t.vertex_index(v).unwrap());
        Rational::from_integer(BigInt::from(self.weights[i])) + &self.offsets[vi] - &self.offsets[ui]
    }

    /// Height of vertex `vi` in `[0, circumference)`.
    pub fn raw_phase(&self, vi: usize) -> Rational {
        Rational::from_integer(BigInt::from(self.potential[vi])) + &self.offsets[vi]
    }

    /// Position of vertex `vi` on the unit circle, in `[0, 1)`.
    pub fn phase(&self, vi: usize) -> Rational {
        self.raw_phase(vi) / Rational::from_integer(BigInt::from(self.circumference()))
    }
}

pub fn build_fibration_map(t: &Triangulation, d: &Direction, weights: &[i64]) -> Result<FibrationMap, FibrationError> {
    check_weights(t, d, weights)?;
    let n = t.vertices().len();
    let max_weight = *weights.iter().max().unwrap_or(&1);
    let denom = BigInt::from(2 * n as i64 * max_weight + 1);
    let offsets = (0..n)
        .map(|r| Rational::new(BigInt::from(r), denom.clone()))
        .collect();
    let (potential, period) = cycle_potential(t, d, weights);
    let circumference = if period == 0 { 1 } else { period };
    let potential = potential.iter().map(|p| p.mod_floor(&circumference)).collect();
    Ok(FibrationMap {
        weights: weights.to_vec(),
        offsets,
        period,
        potential,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCircles {
    pub vertex: VertexId,
    pub circles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkVerification {
    pub pass: bool,
    pub vertices: Vec<VertexCircles>,
}

impl LinkVerification {
    pub fn circles(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().find(|c| c.vertex == v).map(|c| c.circles)
    }
}

/// Counts, in every vertex link, the circles of the zero level of the map
/// measured relative to the centre.
///
/// Link vertex `w` of `v` gets the signed adjusted length of the edge `vw`
/// (positive when `v -> w`). Only signs matter: every link triangle with
/// mixed signs carries one segment between its two sign-changing edges.
pub fn verify_vertex_links(t: &Triangulation, d: &Direction, m: &FibrationMap) -> LinkVerification {
    let vertices: Vec<VertexCircles> = t
        .vertices()
        .iter()
        .map(|&v| {
            let link = t.vertex_link(v).expect("vertex of t");
            let positive = |w: VertexId| {
                let i = t.edge_index(v, w).expect("link vertex is a neighbour");
                let len = m.adjusted_length(t, d, i);
                debug_assert!(len.is_positive());
                let signed = if d.points(v, w) == Some(true) { len } else { -len };
                signed.is_positive()
            };
            let sign: std::collections::HashMap<VertexId, bool> =
                link.vertices.iter().map(|&w| (w, positive(w))).collect();
            let crossing: Vec<[VertexId; 2]> =
                link.edges().into_iter().filter(|[a, b]| sign[a] != sign[b]).collect();
            let mut uf = UnionFind::new(crossing.len());
            for tri in &link.triangles {
                let ends: Vec<usize> = crossing
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| tri.contains(&e[0]) && tri.contains(&e[1]))
                    .map(|(i, _)| i)
                    .collect();
                if let [a, b] = ends[..] {
                    uf.union(a, b);
                }
            }
            VertexCircles {
                vertex: v,
                circles: uf.count(),
            }
        })
        .collect();
    LinkVerification {
        pass: vertices.iter().all(|c| c.circles == 1),
        vertices,
    }
}

/// Midpoint of the largest gap between consecutive vertex phases on the
/// unit circle (first such gap on ties).
pub fn default_theta(m: &FibrationMap) -> Rational {
    let mut phases: Vec<Rational> = (0..m.offsets.len()).map(|i| m.phase(i)).collect();
    phases.sort();
    phases.dedup();
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let mut best: Option<(Rational, Rational)> = None;
    for (i, p) in phases.iter().enumerate() {
        let next = match phases.get(i + 1) {
            Some(q) => q.clone(),
            None => &phases[0] + &one,
        };
        let gap = &next - p;
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, (p + &next) / &two));
        }
    }
    let mid = best.map_or_else(|| Rational::new(BigInt::one(), BigInt::from(2)), |(_, mid)| mid);
    reduce_unit(&mid)
}

fn reduce_unit(x: &Rational) -> Rational {
    x - x.floor()
}

/// Number of integers strictly between `lo` and `hi`.
fn integers_between(lo: &Rational, hi: &Rational) -> i64 {
    let count = hi.ceil().to_integer() - lo.floor().to_integer() - BigInt::one();
    if count.is_negative() {
        0
    } else {
        i64::try_from(count).expect("piece count fits in i64")
    }
}

/// The preimage of `theta` (a point of the unit circle) as a normal surface.
pub fn extract_fiber(
    t: &Triangulation,
    d: &Direction,
    m: &FibrationMap,
    theta: &Rational,
) -> Result<NormalVector, FibrationError> {
    require_total_order(t, d)?;
    let theta = reduce_unit(theta);
    if let Some(vi) = (0..t.vertices().len()).find(|&vi| m.phase(vi) == theta) {
        return Err(FibrationError::ThetaCollision {
            theta: Box::new(theta),
            vertex: t.vertices()[vi],
            suggested: Box::new(default_theta(m)),
        });
    }
    let c = Rational::from_integer(BigInt::from(m.circumference()));
    let level = &theta * &c;
    let mut out = NormalVector::zero(t);
    for (tet, coords) in t.tets().iter().zip(&mut out.coords) {
        let order = d.tet_order(tet).expect("checked above");
        let pos = |v: VertexId| tet.iter().position(|&x| x == v).unwrap();
        let a = order[0];
        let base = m.raw_phase(t.vertex_index(a).unwrap());
        let h: Vec<Rational> = order
            .iter()
            .map(|&x| {
                if x == a {
                    base.clone()
                } else {
                    &base + m.adjusted_length(t, d, t.edge_index(a, x).unwrap())
                }
            })
            .collect();
        // Integer k with level + k c inside (h[i], h[i+1]).
        let between = |i: usize| integers_between(&((&h[i] - &level) / &c), &((&h[i + 1] - &level) / &c));
        coords[pos(order[0])] += between(0);
        coords[4 + quad_joining(pos(order[0]), pos(order[1]))] += between(1);
        coords[pos(order[3])] += between(2);
    }
    Ok(out)
}

/// Renders weights as `.wts` lines `u v w` (tail, head, weight).
pub fn render_weights(d: &Direction, weights: &[i64]) -> String {
    d.arcs()
        .zip(weights)
        .map(|((u, v), w)| format!("{u} {v} {w}\n"))
        .collect()
}

/// Parses `.wts` text; every edge must appear once, oriented as in `d`.
pub fn parse_weights(t: &Triangulation, d: &Direction, text: &str) -> Result<Vec<i64>, FibrationError> {
    let mut weights: Vec<Option<i64>> = vec![None; t.edges().len()];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| FibrationError::WeightsSyntax { line: n + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v, w] = fields[..] else {
            return Err(err(format!("expected `u v w`, found `{line}`")));
        };
        let u: VertexId = u.parse().map_err(|e| err(format!("bad vertex `{u}`: {e}")))?;
        let v: VertexId = v.parse().map_err(|e| err(format!("bad vertex `{v}`: {e}")))?;
        let w: i64 = w.parse().map_err(|e| err(format!("bad weight `{w}`: {e}")))?;
        let i = t.edge_index(u, v).ok_or_else(|| err(format!("{u}-{v} is not an edge")))?;
        if d.arc(i) != (u, v) {
            return Err(err(format!("edge is oriented {:?} by the direction", d.arc(i))));
        }
        if weights[i].replace(w).is_some() {
            return Err(err(format!("edge {u}-{v} listed twice")));
        }
    }
    weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| FibrationError::WeightsSyntax {
                line: 0,
                message: format!("edge {:?} has no weight", d.arc(i)),
            })
        })
        .collect()
}

/// Weights `j - i` on the global order of a triangulation: the coboundary
/// of the vertex ids, which solves every triangle equation.
pub fn id_difference_weights(t: &Triangulation) -> Vec<i64> {
    t.edges().iter().map(|[a, b]| *b as i64 - *a as i64).collect()
}
