//! Cyclic covers defined by integer edge weights.
//!
//! Weights that satisfy every triangle equation are a 1-cocycle, so reducing
//! them modulo `n` gives a map from loops to `ℤ/n` and with it an `n`-fold
//! cyclic cover. Sheet `k` of vertex `v` gets id `k * (maxId + 1) + v`, so the
//! 1-fold cover is the triangulation itself. An arc `u -> v` of weight `w`
//! lifts to `(u, k) -> (v, k + w)`; a tetrahedron with direction order
//! `a -> b -> c -> d` lifts, for each sheet `k` of `a`, by moving every vertex
//! `x` to sheet `k + w(a -> x)`.

use serde::Serialize;
use thiserror::Error;

use crate::direction::Direction;
use crate::fibration::{check_face_equations, FibrationError};
use crate::triangulation::{Triangulation, TriangulationError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("a cover needs at least one sheet")]
    NoSheets,
    #[error(transparent)]
    BadWeights(#[from] FibrationError),
    #[error("lifted complex is not a simplicial triangulation: {0}")]
    Triangulation(#[from] TriangulationError),
    #[error("cover vertex ids overflow")]
    Overflow,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicCover {
    #[serde(skip)]
    pub triangulation: Triangulation,
    #[serde(skip)]
    pub direction: Direction,
    /// Lifted weights, indexed like the cover's edges.
    #[serde(skip)]
    pub weights: Vec<i64>,
    pub sheets: usize,
    /// Cover vertex `(v, k)` has id `k * stride + v`.
    pub stride: u64,
    pub components: usize,
    pub tets: usize,
}

impl CyclicCover {
    /// `(base vertex, sheet)` of a cover vertex.
    pub fn project(&self, v: VertexId) -> (VertexId, usize) {
        ((v as u64 % self.stride) as VertexId, (v as u64 / self.stride) as usize)
    }
}

/// Builds the `n`-fold cyclic cover of `(t, d)` given by `weights`.
pub fn cyclic_cover(t: &Triangulation, d: &Direction, weights: &[i64], n: usize) -> Result<CyclicCover, CoverError> {
    if n == 0 {
        return Err(CoverError::NoSheets);
    }
    check_face_equations(t, d, weights)?;
    let stride = *t.vertices().last().expect("nonempty triangulation") as u64 + 1;
    if stride * n as u64 > VertexId::MAX as u64 {
        return Err(CoverError::Overflow);
    }
    let lift = |v: VertexId, sheet: i64| (sheet.rem_euclid(n as i64) as u64 * stride + v as u64) as VertexId;
    // Weight of the arc tail -> head (negated when traversed backwards).
    let weight = |from: VertexId, to: VertexId| {
        let i = t.edge_index(from, to).expect("edge of t");
        if d.points(from, to) == Some(true) {
            weights[i]
        } else {
            -weights[i]
        }
    };

    let mut tets = Vec::with_capacity(n * t.tets().len());
    for tet in t.tets() {
        let order = d.tet_order(tet).expect("face equations imply ordered tets");
        let a = order[0];
        for k in 0..n as i64 {
            tets.push(tet.map(|x| if x == a { lift(a, k) } else { lift(x, k + weight(a, x)) }));
        }
    }
    let cover = Triangulation::new(tets)?;
    let project = |v: VertexId| ((v as u64 % stride) as VertexId, (v as u64 / stride) as i64);
    let mut lifted = Vec::with_capacity(cover.edges().len());
    let direction = Direction::from_fn(&cover, |x, y| {
        let ((bx, _), (by, _)) = (project(x), project(y));
        let up = d.points(bx, by) == Some(true);
        lifted.push(weights[t.edge_index(bx, by).expect("cover edge projects to an edge")]);
        up
    });
    Ok(CyclicCover {
        components: cover.component_count(),
        tets: cover.tets().len(),
        triangulation: cover,
        direction,
        weights: lifted,
        sheets: n,
        stride,
    })
}
