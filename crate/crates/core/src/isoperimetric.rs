//! Constants for the linear isoperimetric inequality of recurrent directions,
//! and the angle criterion for embedded quasigeodesics.
//!
//! A recurrent direction admits a closed directed walk `α` through every
//! edge. If `α` passes each edge at most `c1` times, and every edge meets at
//! most `maxEdgeDegree` tetrahedra, the constant reported here is
//! `K = c1 · maxEdgeDegree / 3`: each normal piece has at least three corners
//! and each edge crossing is shared by at most `maxEdgeDegree` pieces. This
//! choice of the second constant is a convention of this crate.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::direction::Direction;
use crate::graph::{shortest_path, strongly_connected_components};
use crate::triangulation::{Triangulation, VertexId};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoperimetricError {
    #[error("direction is not recurrent ({scc_count} strongly connected components)")]
    NotRecurrent { scc_count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricConstants {
    /// Closed walk as a vertex sequence; the last vertex equals the first.
    pub walk: Vec<VertexId>,
    /// Largest number of times the walk traverses one edge.
    pub c1: usize,
    pub max_edge_degree: usize,
    /// `c1 · maxEdgeDegree / 3`.
    #[serde(serialize_with = "serialize_rational")]
    pub k: Rational,
}

fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl IsoperimetricConstants {
    /// Number of times the walk uses each edge, in canonical edge order.
    pub fn multiplicities(&self, t: &Triangulation) -> Vec<usize> {
        let mut counts = vec![0; t.edges().len()];
        for w in self.walk.windows(2) {
            counts[t.edge_index(w[0], w[1]).expect("walk follows edges")] += 1;
        }
        counts
    }
}

/// Builds the walk and the constants.
///
/// Starting at the smallest vertex, for each edge `u -> v` in canonical edge
/// order the walk travels by a shortest directed path to `u`, crosses the
/// edge, and returns along a shortest directed path `v -> u`; at the end a
/// shortest path leads back to the start. Shortest paths break ties towards
/// the smallest next vertex, so the walk is deterministic.
pub fn isoperimetric_constant(t: &Triangulation, d: &Direction) -> Result<IsoperimetricConstants, IsoperimetricError> {
    let adj = d.adjacency(t);
    let (_, scc_count) = strongly_connected_components(&adj);
    if scc_count != 1 {
        return Err(IsoperimetricError::NotRecurrent { scc_count });
    }
    let vi = |v: VertexId| t.vertex_index(v).expect("vertex of t");
    let mut walk = vec![0usize];
    let go = |walk: &mut Vec<usize>, target: usize| {
        let from = *walk.last().unwrap();
        let path = shortest_path(&adj, from, target).expect("recurrent");
        walk.extend_from_slice(&path[1..]);
    };
    for (u, v) in d.arcs() {
        go(&mut walk, vi(u));
        walk.push(vi(v));
        go(&mut walk, vi(u));
    }
    go(&mut walk, 0);

    let walk: Vec<VertexId> = walk.into_iter().map(|i| t.vertices()[i]).collect();
    let mut out = IsoperimetricConstants {
        walk,
        c1: 0,
        max_edge_degree: t.max_edge_degree(),
        k: Rational::from_integer(BigInt::from(0)),
    };
    out.c1 = out.multiplicities(t).into_iter().max().unwrap_or(0);
    out.k = Rational::new(BigInt::from(out.c1 * out.max_edge_degree), BigInt::from(3));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuasigeodesicError {
    #[error("need c > 0 and 0 <= eps < pi, got c = {c}, eps = {eps}")]
    DomainError { c: f64, eps: f64 },
}

/// Margin of the inequality `(π − ε)/2 > arcsin(1 / cosh(c/2))` and whether
/// it holds.
///
/// Evaluated as `2·atan(tanh(c/4)) − ε/2`, which is the same quantity
/// (`π/2 − arcsin(sech x)` is the Gudermannian `2·atan(tanh(x/2))`) without
/// the cancellation that the direct form suffers for small `c`.
pub fn quasigeodesic_margin(c: f64, eps: f64) -> Result<(f64, bool), QuasigeodesicError> {
    let pi = std::f64::consts::PI;
    if !(c > 0.0 && c.is_finite() && (0.0..pi).contains(&eps)) {
        return Err(QuasigeodesicError::DomainError { c, eps });
    }
    let margin = 2.0 * (c / 4.0).tanh().atan() - eps / 2.0;
    Ok((margin, margin > 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{pentachoron, product, ClosedSurface};
    use proptest::prelude::*;

    #[test]
    fn pentachoron_is_not_recurrent() {
        let t = pentachoron();
        assert_eq!(
            isoperimetric_constant(&t, &Direction::global_order(&t)),
            Err(IsoperimetricError::NotRecurrent { scc_count: 5 })
        );
    }

    #[test]
    fn product_walks_cover_and_close() {
        for surface in [ClosedSurface::tetrahedron_boundary(), ClosedSurface::seven_vertex_torus()] {
            let b = product(&surface, 3).unwrap();
            let (t, d) = (&b.triangulation, &b.direction);
            let k = isoperimetric_constant(t, d).unwrap();
            assert_eq!(k.walk.first(), k.walk.last());
            for w in k.walk.windows(2) {
                assert_eq!(d.points(w[0], w[1]), Some(true));
            }
            assert!(k.multiplicities(t).iter().all(|&m| m >= 1));
            assert!(k.k >= Rational::from_integer(BigInt::from(1)));
        }
    }

    #[test]
    fn margin_examples() {
        let (m, ok) = quasigeodesic_margin(2.0, 1.0).unwrap();
        let direct = (std::f64::consts::PI - 1.0) / 2.0 - (1.0 / 1.0f64.cosh()).asin();
        assert!((m - direct).abs() < 1e-12);
        assert!((m - 0.366).abs() < 1e-3 && ok);
        assert!(quasigeodesic_margin(100.0, 3.0).unwrap().1);
        assert!(quasigeodesic_margin(0.0, 0.0).is_err());
        assert!(quasigeodesic_margin(1.0, std::f64::consts::PI).is_err());
        assert!(quasigeodesic_margin(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn margin_vanishes_from_above_at_zero() {
        // arcsin(sech(c/2)) < π/2 for every c > 0, so the margin is positive.
        let (m, ok) = quasigeodesic_margin(1e-9, 0.0).unwrap();
        assert!(m > 0.0 && m < 1e-9 && ok);
    }

    proptest! {
        #[test]
        fn margin_is_monotone(c in 1e-6f64..50.0, dc in 1e-3f64..5.0, eps in 0.0f64..3.0, de in 1e-3f64..0.1) {
            let base = quasigeodesic_margin(c, eps).unwrap().0;
            prop_assert!(quasigeodesic_margin(c + dc, eps).unwrap().0 > base);
            prop_assert!(quasigeodesic_margin(c, eps + de).unwrap().0 < base);
        }

        #[test]
        fn stable_form_matches_direct_form(c in 0.1f64..20.0, eps in 0.0f64..3.1) {
            let direct = (std::f64::consts::PI - eps) / 2.0 - (1.0 / (c / 2.0).cosh()).asin();
            prop_assert!((quasigeodesic_margin(c, eps).unwrap().0 - direct).abs() < 1e-9);
        }
    }
}
