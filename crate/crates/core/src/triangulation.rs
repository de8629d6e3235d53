//! Closed simplicial triangulations of 3-manifolds.
//!
//! A [`Triangulation`] is a list of tetrahedra over global vertex ids. Faces
//! and edges are determined by their vertex sets, so only simplicial
//! complexes are representable. Construction validates that the complex is a
//! closed 3-manifold:
//!
//! - every tetrahedron has four distinct vertices and no two tetrahedra share
//!   a vertex set;
//! - every face lies in exactly two tetrahedra;
//! - every vertex link is a connected 2-sphere and every edge link a single
//!   circle.
//!
//! Tetrahedra are stored sorted (each as an ascending 4-tuple, the list
//! lexicographically), which is also the order of the `.tri` renderer. Tet
//! indices used elsewhere in the crate refer to this canonical order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::UnionFind;

pub type VertexId = u32;
/// Unordered vertex pair, stored ascending.
pub type Edge = [VertexId; 2];
/// Unordered vertex triple, stored ascending.
pub type Face = [VertexId; 3];
/// Unordered vertex quadruple, stored ascending.
pub type Tet = [VertexId; 4];

pub fn edge(a: VertexId, b: VertexId) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

pub fn face(a: VertexId, b: VertexId, c: VertexId) -> Face {
    let mut f = [a, b, c];
    f.sort_unstable();
    f
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("face {face:?} lies in {count} tetrahedra, expected 2")]
    NotClosed { face: Face, count: usize },
    #[error("link of {simplex:?} is not a {expected}: {reason}")]
    BadLink {
        simplex: Vec<VertexId>,
        expected: &'static str,
        reason: String,
    },
    #[error("degenerate tetrahedron {tet:?}: {reason}")]
    Degenerate { tet: Vec<VertexId>, reason: String },
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// The link of a vertex: a triangulated 2-sphere on the vertex's neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComplex {
    pub center: VertexId,
    pub vertices: Vec<VertexId>,
    pub triangles: Vec<Face>,
}

impl LinkComplex {
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]])
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }
}

/// A validated closed simplicial 3-manifold triangulation.
#[derive(Debug, Clone)]
pub struct Triangulation {
    tets: Vec<Tet>,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<Edge, usize>,
    face_index: HashMap<Face, usize>,
    vertex_tets: Vec<Vec<usize>>,
    edge_tets: Vec<Vec<usize>>,
    face_tets: Vec<[usize; 2]>,
    neighbors: Vec<Vec<VertexId>>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.tets == other.tets
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Builds and validates a triangulation from tetrahedra given as vertex
    /// quadruples in any order.
    pub fn new(tets: impl IntoIterator<Item = [VertexId; 4]>) -> Result<Self, TriangulationError> {
        let mut sorted: Vec<Tet> = Vec::new();
        for raw in tets {
            let mut t = raw;
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(TriangulationError::Degenerate {
                    tet: raw.to_vec(),
                    reason: "repeated vertex".into(),
                });
            }
            sorted.push(t);
        }
        if sorted.is_empty() {
            return Err(TriangulationError::Empty);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TriangulationError::Degenerate {
                tet: w[0].to_vec(),
                reason: "two tetrahedra share the same vertex set".into(),
            });
        }

        let mut face_map: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        let mut edge_map: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut vertex_map: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, t) in sorted.iter().enumerate() {
            for f in tet_faces(t) {
                face_map.entry(f).or_default().push(i);
            }
            for e in tet_edges(t) {
                edge_map.entry(e).or_default().push(i);
            }
            for &v in t {
                vertex_map.entry(v).or_default().push(i);
            }
        }
        if let Some((f, ts)) = face_map.iter().find(|(_, ts)| ts.len() != 2) {
            return Err(TriangulationError::NotClosed {
                face: *f,
                count: ts.len(),
            });
        }

        let vertices: Vec<VertexId> = vertex_map.keys().copied().collect();
        let edges: Vec<Edge> = edge_map.keys().copied().collect();
        let faces: Vec<Face> = face_map.keys().copied().collect();
        let vertex_index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let face_index = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let face_tets = face_map.values().map(|ts| [ts[0], ts[1]]).collect();
        let mut neighbors = vec![Vec::new(); vertices.len()];
        let vi: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for &[a, b] in &edges {
            neighbors[vi[&a]].push(b);
            neighbors[vi[&b]].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }

        let tri = Triangulation {
            tets: sorted,
            vertices,
            edges,
            faces,
            vertex_index,
            edge_index,
            face_index,
            vertex_tets: vertex_map.into_values().collect(),
            edge_tets: edge_map.into_values().collect(),
            face_tets,
            neighbors,
        };
        tri.check_links()?;
        Ok(tri)
    }

    fn check_links(&self) -> Result<(), TriangulationError> {
        for &v in &self.vertices {
            let link = self.vertex_link(v)?;
            let index: HashMap<VertexId, usize> =
                link.vertices.iter().enumerate().map(|(i, &w)| (w, i)).collect();
            let mut uf = UnionFind::new(link.vertices.len());
            for [a, b] in link.edges() {
                uf.union(index[&a], index[&b]);
            }
            let chi = link.euler_characteristic();
            let components = uf.count();
            if chi != 2 || components != 1 {
                return Err(TriangulationError::BadLink {
                    simplex: vec![v],
                    expected: "2-sphere",
                    reason: format!("euler characteristic {chi}, {components} component(s)"),
                });
            }
        }
        for (ei, &[u, v]) in self.edges.iter().enumerate() {
            // Each opposite edge of a tet around uv is a link edge; faces being
            // closed makes every link vertex have degree 2, so one component
            // means one circle.
            let mut opposite: Vec<Edge> = Vec::new();
            for &t in &self.edge_tets[ei] {
                let rest: Vec<VertexId> = self.tets[t].iter().copied().filter(|&x| x != u && x != v).collect();
                opposite.push(edge(rest[0], rest[1]));
            }
            let mut verts: Vec<VertexId> = opposite.iter().flatten().copied().collect();
            verts.sort_unstable();
            verts.dedup();
            let index: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &w)| (w, i)).collect();
            let mut uf = UnionFind::new(verts.len());
            for [a, b] in &opposite {
                uf.union(index[a], index[b]);
            }
            if uf.count() != 1 || verts.len() != opposite.len() {
                return Err(TriangulationError::BadLink {
                    simplex: vec![u, v],
                    expected: "circle",
                    reason: format!("{} components over {} link edges", uf.count(), opposite.len()),
                });
            }
        }
        Ok(())
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// `(V, E, F, T)`.
    pub fn f_vector(&self) -> (usize, usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len(), self.tets.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f, t) = self.f_vector();
        v as i64 - e as i64 + f as i64 - t as i64
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertex_index.get(&v).copied()
    }

    pub fn edge_index(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.edge_index.get(&edge(a, b)).copied()
    }

    pub fn face_index(&self, a: VertexId, b: VertexId, c: VertexId) -> Option<usize> {
        self.face_index.get(&face(a, b, c)).copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_index.contains_key(&v)
    }

    /// Sorted neighbours of `v` in the 1-skeleton.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.vertex_index(v).map_or(&[], |i| &self.neighbors[i])
    }

    pub fn tets_around_vertex(&self, vertex_idx: usize) -> &[usize] {
        &self.vertex_tets[vertex_idx]
    }

    pub fn tets_around_edge(&self, edge_idx: usize) -> &[usize] {
        &self.edge_tets[edge_idx]
    }

    pub fn tets_of_face(&self, face_idx: usize) -> [usize; 2] {
        self.face_tets[face_idx]
    }

    /// Largest number of tetrahedra around a single edge.
    pub fn max_edge_degree(&self) -> usize {
        self.edge_tets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertex_link(&self, v: VertexId) -> Result<LinkComplex, TriangulationError> {
        let vi = self
            .vertex_index(v)
            .ok_or(TriangulationError::UnknownVertex(v))?;
        let mut triangles: Vec<Face> = self.vertex_tets[vi]
            .iter()
            .map(|&t| {
                let rest: Vec<VertexId> = self.tets[t].iter().copied().filter(|&x| x != v).collect();
                [rest[0], rest[1], rest[2]]
            })
            .collect();
        triangles.sort_unstable();
        Ok(LinkComplex {
            center: v,
            vertices: self.neighbors[vi].clone(),
            triangles,
        })
    }

    /// Number of connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for &[a, b] in &self.edges {
            uf.union(self.vertex_index[&a], self.vertex_index[&b]);
        }
        uf.count()
    }

    /// Canonical `.tri` rendering.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Parses the `.tri` text format: one `tet a b c d` per line, `#`
    /// comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let mut tets = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| TriangulationError::Syntax { line: n + 1, message };
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("tet") {
                return Err(syntax(format!("expected `tet a b c d`, found `{line}`")));
            }
            let ids = tokens
                .map(|tok| tok.parse::<VertexId>().map_err(|e| syntax(format!("bad vertex id `{tok}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let tet: [VertexId; 4] = ids
                .try_into()
                .map_err(|ids: Vec<VertexId>| syntax(format!("expected 4 vertex ids, found {}", ids.len())))?;
            tets.push(tet);
        }
        Self::new(tets)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for [a, b, c, d] in &self.tets {
            writeln!(f, "tet {a} {b} {c} {d}")?;
        }
        Ok(())
    }
}

/// The four faces of a sorted tetrahedron, each sorted, in lexicographic order.
pub fn tet_faces(t: &Tet) -> [Face; 4] {
    let [a, b, c, d] = *t;
    [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
}

/// The six edges of a sorted tetrahedron, each sorted, in lexicographic order.
pub fn tet_edges(t: &Tet) -> [Edge; 6] {
    let [a, b, c, d] = *t;
    [[a, b], [a, c], [a, d], [b, c], [b, d], [c, d]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::pentachoron;

    const PENTACHORON: &str = "\
# boundary of the 4-simplex
tet 0 1 2 3
tet 0 1 2 4
tet 0 1 3 4
tet 0 2 3 4
tet 1 2 3 4
";

    #[test]
    fn parses_pentachoron() {
        let t = Triangulation::parse(PENTACHORON).unwrap();
        assert_eq!(t.f_vector(), (5, 10, 10, 5));
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t, pentachoron());
    }

    #[test]
    fn missing_tet_is_not_closed() {
        let text: String = PENTACHORON.lines().filter(|l| *l != "tet 0 2 3 4").map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            Triangulation::parse(&text),
            Err(TriangulationError::NotClosed { count: 1, .. })
        ));
    }

    #[test]
    fn repeated_vertex_is_degenerate() {
        assert!(matches!(
            Triangulation::parse("tet 0 0 1 2\n"),
            Err(TriangulationError::Degenerate { .. })
        ));
    }

    #[test]
    fn doubled_tetrahedron_is_rejected() {
        // Every face would be in exactly two tets, but the complex is not simplicial.
        assert!(matches!(
            Triangulation::parse("tet 0 1 2 3\ntet 3 2 1 0\n"),
            Err(TriangulationError::Degenerate { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = Triangulation::parse("tet 0 1 2 3\n\ntet 0 1 x 3\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 3, .. }));
        let err = Triangulation::parse("tri 0 1 2\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 1, .. }));
        let err = Triangulation::parse("tet 0 1 2\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 1, .. }));
    }

    #[test]
    fn empty_document_is_rejected() {
        assert_eq!(Triangulation::parse("# nothing\n"), Err(TriangulationError::Empty));
    }

    #[test]
    fn pinched_vertex_has_bad_link() {
        // Two pentachora sharing vertex 0: every face is closed but link(0)
        // is two disjoint spheres.
        let mut tets: Vec<[VertexId; 4]> = pentachoron().tets().to_vec();
        for t in pentachoron().tets() {
            let shifted = t.map(|v| if v == 0 { 0 } else { v + 10 });
            tets.push(shifted);
        }
        assert!(matches!(
            Triangulation::new(tets),
            Err(TriangulationError::BadLink { expected: "2-sphere", .. })
        ));
    }

    #[test]
    fn vertex_link_of_pentachoron() {
        let t = pentachoron();
        let link = t.vertex_link(0).unwrap();
        assert_eq!(link.vertices, vec![1, 2, 3, 4]);
        assert_eq!(link.triangles.len(), 4);
        assert_eq!(link.euler_characteristic(), 2);
        assert_eq!(t.vertex_link(7), Err(TriangulationError::UnknownVertex(7)));
    }

    #[test]
    fn render_is_canonical() {
        let shuffled = "tet 4 3 2 1\ntet 0 1 2 3\ntet 4 0 1 2\ntet 3 4 0 1\ntet 2 3 4 0\n";
        let t = Triangulation::parse(shuffled).unwrap();
        assert_eq!(t.render(), PENTACHORON.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    }
}
