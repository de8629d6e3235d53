//! Generators for desk-scale closed 3-manifolds.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use thiserror::Error;

use crate::direction::Direction;
use crate::graph::UnionFind;
use crate::triangulation::{Edge, Triangulation, TriangulationError, VertexId};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("not a closed simplicial surface: {0}")]
    BadSurface(String),
    #[error("a product needs at least 3 layers, got {0}")]
    TooFewLayers(usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

/// Boundary of the 4-simplex on vertices `0..5`: the smallest simplicial S³.
pub fn pentachoron() -> Triangulation {
    let tets = (0..5u32).map(|skip| {
        let mut t = [0; 4];
        for (slot, v) in t.iter_mut().zip((0..5).filter(|&v| v != skip)) {
            *slot = v;
        }
        t
    });
    Triangulation::new(tets).expect("the pentachoron is a closed 3-manifold")
}

/// A connected closed simplicial surface given by its triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSurface {
    triangles: Vec<[VertexId; 3]>,
    vertices: Vec<VertexId>,
}

impl ClosedSurface {
    pub fn new(triangles: impl IntoIterator<Item = [VertexId; 3]>) -> Result<Self, GenerateError> {
        let bad = |msg: String| GenerateError::BadSurface(msg);
        let mut tris: Vec<[VertexId; 3]> = triangles
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        if tris.is_empty() {
            return Err(bad("no triangles".into()));
        }
        tris.sort_unstable();
        if let Some(t) = tris.iter().find(|t| t[0] == t[1] || t[1] == t[2]) {
            return Err(bad(format!("triangle {t:?} repeats a vertex")));
        }
        if let Some(w) = tris.windows(2).find(|w| w[0] == w[1]) {
            return Err(bad(format!("triangle {:?} appears twice", w[0])));
        }
        let mut edge_count: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut vertex_link: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
        for &[a, b, c] in &tris {
            for e in [[a, b], [a, c], [b, c]] {
                *edge_count.entry(e).or_default() += 1;
            }
            vertex_link.entry(a).or_default().push([b, c]);
            vertex_link.entry(b).or_default().push([a, c]);
            vertex_link.entry(c).or_default().push([a, b]);
        }
        if let Some((e, n)) = edge_count.iter().find(|(_, &n)| n != 2) {
            return Err(bad(format!("edge {e:?} lies in {n} triangles")));
        }
        for (v, link) in &vertex_link {
            if !single_component(link) {
                return Err(bad(format!("link of vertex {v} is not a single circle")));
            }
        }
        let all_edges: Vec<Edge> = edge_count.keys().copied().collect();
        if !single_component(&all_edges) {
            return Err(bad("surface is disconnected".into()));
        }
        Ok(Self {
            vertices: vertex_link.keys().copied().collect(),
            triangles: tris,
        })
    }

    /// Boundary of the tetrahedron: a 4-vertex 2-sphere.
    pub fn tetrahedron_boundary() -> Self {
        Self::new([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid sphere")
    }

    /// The 7-vertex (Möbius) torus with triangles `{i, i+1, i+3}` and
    /// `{i, i+2, i+3}` mod 7.
    pub fn seven_vertex_torus() -> Self {
        let tris = (0..7u32).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
        Self::new(tris).expect("valid torus")
    }

    pub fn triangles(&self) -> &[[VertexId; 3]] {
        &self.triangles
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn euler_characteristic(&self) -> i64 {
        let edges: BTreeSet<Edge> = self
            .triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]])
            .collect();
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }
}

fn single_component(edges: &[Edge]) -> bool {
    let mut ids: Vec<VertexId> = edges.iter().flatten().copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    for [a, b] in edges {
        uf.union(index[a], index[b]);
    }
    uf.count() == 1
}

/// A triangulated `surface × S¹` with its height function and the direction
/// of increasing height.
#[derive(Debug, Clone)]
pub struct ProductBundle {
    pub triangulation: Triangulation,
    pub direction: Direction,
    /// `r(v, k) = k + rank(v) / (V + 1)`, read modulo `layers`.
    pub heights: BTreeMap<VertexId, Rational>,
    pub layers: usize,
    /// Number of surface vertices; vertex `(v, k)` has id `k * V + rank(v)`.
    pub surface_vertices: usize,
}

impl ProductBundle {
    /// Id of the copy of the surface vertex with rank `rank` in layer `layer`.
    pub fn vertex(&self, rank: usize, layer: usize) -> VertexId {
        (layer * self.surface_vertices + rank) as VertexId
    }
}

/// Triangulates `surface × S¹` with `layers` copies of the surface.
///
/// Each prism `abc × [k, k+1]` (with `a < b < c`) is split into the three
/// tetrahedra `c_k b_k a_k a_{k+1}`, `c_k b_k b_{k+1} a_{k+1}` and
/// `c_k c_{k+1} b_{k+1} a_{k+1}`. The diagonal of every vertical square runs
/// from the higher-rank vertex in layer `k` to the lower-rank one in layer
/// `k + 1`, which depends only on the pair, so neighbouring prisms agree.
///
/// Heights `r(v, k) = k + rank(v) / (V + 1)` increase along in-layer edges
/// (towards higher rank), vertical edges and diagonals (one layer up, towards
/// lower rank); the resulting direction is recurrent because ranks go up
/// inside a layer and down across diagonals.
pub fn product(surface: &ClosedSurface, layers: usize) -> Result<ProductBundle, GenerateError> {
    if layers < 3 {
        return Err(GenerateError::TooFewLayers(layers));
    }
    let n = surface.vertices().len();
    let rank: HashMap<VertexId, usize> = surface.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let id = |r: usize, k: usize| (k % layers * n + r) as VertexId;

    let mut tets = Vec::with_capacity(3 * layers * surface.triangles().len());
    for tri in surface.triangles() {
        let mut r = tri.map(|v| rank[&v]);
        r.sort_unstable();
        let [a, b, c] = r;
        for k in 0..layers {
            tets.push([id(c, k), id(b, k), id(a, k), id(a, k + 1)]);
            tets.push([id(c, k), id(b, k), id(b, k + 1), id(a, k + 1)]);
            tets.push([id(c, k), id(c, k + 1), id(b, k + 1), id(a, k + 1)]);
        }
    }
    let triangulation = Triangulation::new(tets)?;

    let decode = |v: VertexId| (v as usize % n, v as usize / n);
    let direction = Direction::from_fn(&triangulation, |x, y| {
        let ((rx, kx), (ry, ky)) = (decode(x), decode(y));
        if kx == ky {
            rx < ry
        } else {
            ky == (kx + 1) % layers
        }
    });
    let heights = triangulation
        .vertices()
        .iter()
        .map(|&v| {
            let (r, k) = decode(v);
            let h = Rational::from_integer(BigInt::from(k)) + Rational::new(BigInt::from(r), BigInt::from(n + 1));
            (v, h)
        })
        .collect();
    Ok(ProductBundle {
        triangulation,
        direction,
        heights,
        layers,
        surface_vertices: n,
    })
}

/// The 3-sphere as the join of an `n`-cycle (vertices `0..n`) and an
/// `m`-cycle (vertices `n..n+m`).
pub fn cycle_join(n: usize, m: usize) -> Result<Triangulation, GenerateError> {
    for len in [n, m] {
        if len < 3 {
            return Err(GenerateError::CycleTooShort(len));
        }
    }
    let a = |i: usize| (i % n) as VertexId;
    let b = |j: usize| (n + j % m) as VertexId;
    let tets = (0..n).flat_map(|i| (0..m).map(move |j| [a(i), a(i + 1), b(j), b(j + 1)]));
    Ok(Triangulation::new(tets)?)
}

/// Whether every arc of the bundle's direction climbs the height function
/// (by less than two layers, reading heights modulo `layers`).
pub fn is_monotone(bundle: &ProductBundle) -> bool {
    let layers = Rational::from_integer(BigInt::from(bundle.layers));
    bundle.direction.arcs().all(|(u, v)| {
        let (hu, hv) = (&bundle.heights[&u], &bundle.heights[&v]);
        let mut rise = hv - hu;
        if rise < Rational::from_integer(BigInt::from(-1)) {
            rise += &layers;
        }
        rise > Rational::from_integer(BigInt::from(0)) && rise < Rational::from_integer(BigInt::from(2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentachoron_counts() {
        let t = pentachoron();
        assert_eq!(t.f_vector(), (5, 10, 10, 5));
        assert_eq!(t.euler_characteristic(), 0);
        for &v in t.vertices() {
            assert_eq!(t.vertex_link(v).unwrap().triangles.len(), 4);
        }
    }

    #[test]
    fn surfaces() {
        assert_eq!(ClosedSurface::tetrahedron_boundary().euler_characteristic(), 2);
        let torus = ClosedSurface::seven_vertex_torus();
        assert_eq!(torus.vertices().len(), 7);
        assert_eq!(torus.triangles().len(), 14);
        assert_eq!(torus.euler_characteristic(), 0);
    }

    #[test]
    fn bad_surfaces() {
        assert!(matches!(ClosedSurface::new([[0, 1, 2]]), Err(GenerateError::BadSurface(_))));
        assert!(matches!(ClosedSurface::new([[0, 0, 1]]), Err(GenerateError::BadSurface(_))));
        // Two spheres sharing a vertex: pinched link.
        let pinched = [
            [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3],
            [0, 4, 5], [0, 4, 6], [0, 5, 6], [4, 5, 6],
        ];
        assert!(matches!(ClosedSurface::new(pinched), Err(GenerateError::BadSurface(_))));
    }

    #[test]
    fn sphere_times_circle_counts() {
        let b = product(&ClosedSurface::tetrahedron_boundary(), 3).unwrap();
        let (v, _, _, t) = b.triangulation.f_vector();
        assert_eq!((v, t), (12, 36));
        assert_eq!(b.triangulation.euler_characteristic(), 0);
        assert!(is_monotone(&b));
    }

    #[test]
    fn torus_times_circle_counts() {
        let b = product(&ClosedSurface::seven_vertex_torus(), 3).unwrap();
        let (v, _, _, t) = b.triangulation.f_vector();
        assert_eq!((v, t), (21, 126));
        assert!(is_monotone(&b));
    }

    #[test]
    fn two_layers_rejected() {
        assert_eq!(
            product(&ClosedSurface::tetrahedron_boundary(), 2).unwrap_err(),
            GenerateError::TooFewLayers(2)
        );
    }

    #[test]
    fn every_product_vertex_has_in_and_out_edges() {
        let b = product(&ClosedSurface::seven_vertex_torus(), 4).unwrap();
        for &v in b.triangulation.vertices() {
            let nbrs = b.triangulation.neighbors(v);
            assert!(nbrs.iter().any(|&w| b.direction.points(v, w) == Some(true)));
            assert!(nbrs.iter().any(|&w| b.direction.points(w, v) == Some(true)));
        }
    }

    #[test]
    fn join_is_a_sphere() {
        let t = cycle_join(3, 4).unwrap();
        assert_eq!(t.tets().len(), 12);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(cycle_join(2, 3).is_err());
    }
}
