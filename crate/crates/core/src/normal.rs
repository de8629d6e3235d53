//! Normal coordinates of surfaces in a triangulation.
//!
//! In a tetrahedron with vertices `v0 < v1 < v2 < v3` a normal surface meets
//! the interior in triangles `t0..t3` (one type cutting off each vertex) and
//! quadrilaterals of three types, each separating a vertex pairing:
//!
//! | coordinate | separates       |
//! |------------|-----------------|
//! | `q0`       | `v0 v1 / v2 v3` |
//! | `q1`       | `v0 v2 / v1 v3` |
//! | `q2`       | `v0 v3 / v1 v2` |
//!
//! Quads of one type are stacked from the side that contains `v0`, and
//! triangles at a vertex from that vertex outwards; these conventions fix
//! how pieces glue across faces when counting components.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::UnionFind;
use crate::triangulation::{Edge, Face, Triangulation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("tetrahedron index {index} out of range ({count} tetrahedra)")]
    TetOutOfRange { index: usize, count: usize },
    #[error("tetrahedron {0} listed twice")]
    DuplicateTet(usize),
    #[error("invalid normal vector: {0}")]
    InvalidVector(Violation),
}

/// The first reason a vector fails to describe an embedded normal surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    WrongLength { expected: usize, found: usize },
    Negative { tet: usize, coordinate: usize },
    QuadCondition { tet: usize },
    Matching { face: Face, corner: VertexId, counts: [i64; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => write!(f, "{found} tetrahedra given, expected {expected}"),
            Self::Negative { tet, coordinate } => write!(f, "coordinate {coordinate} of tetrahedron {tet} is negative"),
            Self::QuadCondition { tet } => write!(f, "tetrahedron {tet} has two quad types"),
            Self::Matching { face, corner, counts } => write!(
                f,
                "face {face:?} corner {corner}: {} arcs on one side, {} on the other",
                counts[0], counts[1]
            ),
        }
    }
}

/// Seven coordinates per tetrahedron, in the triangulation's tet order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalVector {
    pub coords: Vec<[i64; 7]>,
}

/// The quad coordinate whose pairing puts tet positions `i` and `k` on the
/// same side (`q_j` pairs `v0` with `v_{j+1}`).
pub(crate) fn quad_joining(i: usize, k: usize) -> usize {
    let (lo, hi) = (i.min(k), i.max(k));
    if lo == 0 {
        hi - 1
    } else {
        // The complementary pair is {0, 6 - lo - hi}.
        5 - lo - hi
    }
}

impl NormalVector {
    pub fn zero(t: &Triangulation) -> Self {
        Self {
            coords: vec![[0; 7]; t.tets().len()],
        }
    }

    /// The vertex-linking sphere of `v`: one triangle at `v` in every
    /// tetrahedron containing it.
    pub fn vertex_link(t: &Triangulation, v: VertexId) -> Self {
        let mut out = Self::zero(t);
        for (tet, c) in t.tets().iter().zip(&mut out.coords) {
            if let Some(i) = tet.iter().position(|&x| x == v) {
                c[i] = 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| std::array::from_fn(|i| a[i] + b[i]))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// Number of normal pieces (triangles plus quads).
    pub fn piece_count(&self) -> i64 {
        self.coords.iter().flatten().sum()
    }

    /// Number of tetrahedra carrying at least one piece.
    pub fn occupied_tets(&self) -> usize {
        self.coords.iter().filter(|c| c.iter().any(|&x| x != 0)).count()
    }

    /// Parses the `.nsv` format: `tet-index t0 t1 t2 t3 q0 q1 q2` per line.
    /// Tetrahedra that are not listed carry no pieces.
    pub fn parse(t: &Triangulation, text: &str) -> Result<Self, NormalError> {
        let count = t.tets().len();
        let mut coords = vec![[0i64; 7]; count];
        let mut seen = vec![false; count];
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| NormalError::Syntax { line: n + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 8 {
                return Err(syntax(format!("expected 8 fields, found {}", fields.len())));
            }
            let index: usize = fields[0]
                .parse()
                .map_err(|e| syntax(format!("bad tetrahedron index `{}`: {e}", fields[0])))?;
            if index >= count {
                return Err(NormalError::TetOutOfRange { index, count });
            }
            if std::mem::replace(&mut seen[index], true) {
                return Err(NormalError::DuplicateTet(index));
            }
            for (slot, tok) in coords[index].iter_mut().zip(&fields[1..]) {
                *slot = tok.parse().map_err(|e| syntax(format!("bad coordinate `{tok}`: {e}")))?;
            }
        }
        Ok(Self { coords })
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            write!(f, "{i}")?;
            for x in c {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Arcs at corner `corner` (a tet vertex position) of the face opposite tet
/// position `opposite`: triangles at the corner plus the quads that pair the
/// corner with the opposite vertex.
fn corner_arcs(c: &[i64; 7], corner: usize, opposite: usize) -> i64 {
    c[corner] + c[4 + quad_joining(corner, opposite)]
}

/// Pieces meeting the tet edge between positions `i` and `k`.
fn edge_crossings(c: &[i64; 7], i: usize, k: usize) -> i64 {
    let together = quad_joining(i, k);
    c[i] + c[k] + (0..3).filter(|&q| q != together).map(|q| c[4 + q]).sum::<i64>()
}

fn position(tet: &[VertexId; 4], v: VertexId) -> usize {
    tet.iter().position(|&x| x == v).expect("vertex of tet")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Checks non-negativity, the one-quad-type rule and the matching equations.
pub fn validate_normal_vector(t: &Triangulation, n: &NormalVector) -> Validation {
    let violation = find_violation(t, n);
    Validation {
        valid: violation.is_none(),
        violation,
    }
}

fn find_violation(t: &Triangulation, n: &NormalVector) -> Option<Violation> {
    if n.coords.len() != t.tets().len() {
        return Some(Violation::WrongLength {
            expected: t.tets().len(),
            found: n.coords.len(),
        });
    }
    for (tet, c) in n.coords.iter().enumerate() {
        if let Some(coordinate) = c.iter().position(|&x| x < 0) {
            return Some(Violation::Negative { tet, coordinate });
        }
        if c[4..].iter().filter(|&&q| q != 0).count() > 1 {
            return Some(Violation::QuadCondition { tet });
        }
    }
    for (fi, f) in t.faces().iter().enumerate() {
        for &corner in f {
            let counts = t.tets_of_face(fi).map(|ti| face_corner_arcs(t, n, ti, f, corner));
            if counts[0] != counts[1] {
                return Some(Violation::Matching { face: *f, corner, counts });
            }
        }
    }
    None
}

fn face_corner_arcs(t: &Triangulation, n: &NormalVector, ti: usize, f: &Face, corner: VertexId) -> i64 {
    let tet = &t.tets()[ti];
    let opposite = tet.iter().position(|v| !f.contains(v)).expect("face of tet");
    corner_arcs(&n.coords[ti], position(tet, corner), opposite)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceStats {
    pub euler_characteristic: i64,
    pub component_count: usize,
    pub piece_count: i64,
    /// Crossings per edge, in the triangulation's edge order.
    pub edge_crossings: Vec<(Edge, i64)>,
}

/// Euler characteristic (crossings − arcs + pieces) and connected components.
pub fn surface_stats(t: &Triangulation, n: &NormalVector) -> Result<SurfaceStats, NormalError> {
    if let Some(v) = find_violation(t, n) {
        return Err(NormalError::InvalidVector(v));
    }
    let edge_crossings: Vec<(Edge, i64)> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(ei, &e)| {
            let ti = t.tets_around_edge(ei)[0];
            let tet = &t.tets()[ti];
            (e, edge_crossings(&n.coords[ti], position(tet, e[0]), position(tet, e[1])))
        })
        .collect();
    let vertices: i64 = edge_crossings.iter().map(|(_, c)| c).sum();
    let arcs: i64 = t
        .faces()
        .iter()
        .enumerate()
        .map(|(fi, f)| {
            let ti = t.tets_of_face(fi)[0];
            f.iter().map(|&x| face_corner_arcs(t, n, ti, f, x)).sum::<i64>()
        })
        .sum();
    let piece_count = n.piece_count();
    Ok(SurfaceStats {
        euler_characteristic: vertices - arcs + piece_count,
        component_count: count_components(t, n),
        piece_count,
        edge_crossings,
    })
}

/// Pieces are nodes; two pieces are adjacent when they share a face arc.
fn count_components(t: &Triangulation, n: &NormalVector) -> usize {
    // first[ti][k]: id of the first piece of coordinate k in tet ti.
    let mut first = Vec::with_capacity(n.coords.len());
    let mut total = 0usize;
    for c in &n.coords {
        let mut row = [0usize; 7];
        for k in 0..7 {
            row[k] = total;
            total += c[k] as usize;
        }
        first.push(row);
    }
    let mut uf = UnionFind::new(total);
    for (fi, f) in t.faces().iter().enumerate() {
        for &corner in f {
            let sides = t.tets_of_face(fi).map(|ti| arc_pieces(t, n, &first, ti, f, corner));
            for (a, b) in sides[0].iter().zip(&sides[1]) {
                uf.union(*a, *b);
            }
        }
    }
    uf.count()
}

/// The pieces meeting the arcs at `corner` of face `f` inside tet `ti`,
/// ordered outwards from the corner.
fn arc_pieces(
    t: &Triangulation,
    n: &NormalVector,
    first: &[[usize; 7]],
    ti: usize,
    f: &Face,
    corner: VertexId,
) -> Vec<usize> {
    let tet = &t.tets()[ti];
    let c = &n.coords[ti];
    let x = position(tet, corner);
    let w = tet.iter().position(|v| !f.contains(v)).expect("face of tet");
    let q = quad_joining(x, w);
    let mut out: Vec<usize> = (0..c[x] as usize).map(|k| first[ti][x] + k).collect();
    let quads = (0..c[4 + q] as usize).map(|k| first[ti][4 + q] + k);
    // Quad q is stacked from the side holding v0, i.e. {v0, v_{q+1}}.
    if x == 0 || x == q + 1 {
        out.extend(quads);
    } else {
        out.extend(quads.rev());
    }
    out
}
