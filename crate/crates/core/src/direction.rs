//! Edge orientations ("directions") and the local-orientation predicates.
//!
//! A direction is a local orientation when
//!
//! 1. for every vertex `v`, the subgraphs `o(v)` and `i(v)` of `link(v)`
//!    induced on the outgoing and incoming neighbours are nonempty and
//!    connected;
//! 2. the six edges of every tetrahedron are acyclic, i.e. induce a total
//!    order on its vertices;
//! 3. the directed 1-skeleton is strongly connected (recurrent).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{reachable_from, strongly_connected_components, UnionFind};
use crate::triangulation::{edge, tet_faces, Edge, Face, Tet, Triangulation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}-{1} is not an edge of the triangulation")]
    UnknownEdge(VertexId, VertexId),
    #[error("edge {0:?} is oriented more than once")]
    DuplicateEdge(Edge),
    #[error("edge {0:?} has no orientation")]
    MissingEdge(Edge),
    #[error("direction does not match the triangulation's edge set")]
    Mismatch,
}

/// An orientation of every edge class of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    edges: Vec<Edge>,
    /// `forward[i]` means `edges[i][0] -> edges[i][1]`.
    forward: Vec<bool>,
}

impl Direction {
    /// Orients every edge from its smaller to its larger vertex id.
    pub fn global_order(t: &Triangulation) -> Self {
        Self {
            edges: t.edges().to_vec(),
            forward: vec![true; t.edges().len()],
        }
    }

    /// Orients each edge `{a, b}` as `a -> b` iff `points_up(a, b)` (called
    /// with `a < b`).
    pub fn from_fn(t: &Triangulation, mut points_up: impl FnMut(VertexId, VertexId) -> bool) -> Self {
        Self {
            edges: t.edges().to_vec(),
            forward: t.edges().iter().map(|&[a, b]| points_up(a, b)).collect(),
        }
    }

    /// Builds a direction from `(tail, head)` pairs that must cover every
    /// edge exactly once.
    pub fn from_arcs(
        t: &Triangulation,
        arcs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, DirectionError> {
        let mut forward: Vec<Option<bool>> = vec![None; t.edges().len()];
        for (u, v) in arcs {
            let i = t.edge_index(u, v).ok_or(DirectionError::UnknownEdge(u, v))?;
            if forward[i].is_some() {
                return Err(DirectionError::DuplicateEdge(edge(u, v)));
            }
            forward[i] = Some(u < v);
        }
        let forward = forward
            .iter()
            .zip(t.edges())
            .map(|(f, e)| f.ok_or(DirectionError::MissingEdge(*e)))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            edges: t.edges().to_vec(),
            forward,
        })
    }

    /// Parses the `.dir` format: one `u v` line per edge meaning `u -> v`.
    pub fn parse(t: &Triangulation, text: &str) -> Result<Self, DirectionError> {
        let mut arcs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| DirectionError::Syntax { line: n + 1, message };
            let ids = line
                .split_whitespace()
                .map(|tok| tok.parse::<VertexId>().map_err(|e| syntax(format!("bad vertex id `{tok}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            match ids[..] {
                [u, v] => arcs.push((u, v)),
                _ => return Err(syntax(format!("expected `u v`, found `{line}`"))),
            }
        }
        Self::from_arcs(t, arcs)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn ensure_matches(&self, t: &Triangulation) -> Result<(), DirectionError> {
        if self.edges == t.edges() {
            Ok(())
        } else {
            Err(DirectionError::Mismatch)
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(tail, head)` of edge `i` in canonical edge order.
    pub fn arc(&self, i: usize) -> (VertexId, VertexId) {
        let [a, b] = self.edges[i];
        if self.forward[i] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.edges.len()).map(|i| self.arc(i))
    }

    /// `Some(true)` if `u -> v`, `Some(false)` if `v -> u`, `None` if `uv`
    /// is not an edge.
    pub fn points(&self, u: VertexId, v: VertexId) -> Option<bool> {
        let i = self.edges.binary_search(&edge(u, v)).ok()?;
        Some(self.forward[i] == (u < v))
    }

    /// A copy with edge `{a, b}` reversed.
    pub fn flipped(&self, a: VertexId, b: VertexId) -> Result<Self, DirectionError> {
        let i = self
            .edges
            .binary_search(&edge(a, b))
            .map_err(|_| DirectionError::UnknownEdge(a, b))?;
        let mut out = self.clone();
        out.forward[i] = !out.forward[i];
        Ok(out)
    }

    /// Directed adjacency over `t`'s vertex indices, each list sorted.
    pub fn adjacency(&self, t: &Triangulation) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); t.vertices().len()];
        for (u, v) in self.arcs() {
            let (ui, vi) = (t.vertex_index(u).unwrap(), t.vertex_index(v).unwrap());
            adj[ui].push(vi);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The vertices of `tet` listed in the order induced by the direction, or
    /// a directed 3-cycle inside one of its faces.
    pub fn tet_order(&self, tet: &Tet) -> Result<[VertexId; 4], [VertexId; 3]> {
        for f in tet_faces(tet) {
            if let Some(cycle) = self.face_cycle(&f) {
                return Err(cycle);
            }
        }
        let mut order = *tet;
        let outdeg = |v: VertexId| tet.iter().filter(|&&w| w != v && self.points(v, w) == Some(true)).count();
        order.sort_by_key(|&v| std::cmp::Reverse(outdeg(v)));
        Ok(order)
    }

    /// The vertices of a face in direction order (`a -> b -> c`, `a -> c`),
    /// or `None` if the face is a directed 3-cycle.
    pub fn face_order(&self, f: &Face) -> Option<[VertexId; 3]> {
        if self.face_cycle(f).is_some() {
            return None;
        }
        let mut order = *f;
        let outdeg = |v: VertexId| f.iter().filter(|&&w| w != v && self.points(v, w) == Some(true)).count();
        order.sort_by_key(|&v| std::cmp::Reverse(outdeg(v)));
        Some(order)
    }

    /// A directed 3-cycle on `f`, started at the tail of its lowest edge.
    fn face_cycle(&self, f: &Face) -> Option<[VertexId; 3]> {
        let [a, b, c] = *f;
        let ab = self.points(a, b)?;
        let bc = self.points(b, c)?;
        let ca = self.points(c, a)?;
        if ab == bc && bc == ca {
            Some(if ab { [a, b, c] } else { [b, a, c] })
        } else {
            None
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in self.arcs() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLinkVerdict {
    pub vertex: VertexId,
    pub outgoing: Vec<VertexId>,
    pub incoming: Vec<VertexId>,
    pub outgoing_connected: bool,
    pub incoming_connected: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkCondition {
    pub pass: bool,
    pub failing_vertices: Vec<VertexId>,
    pub vertices: Vec<VertexLinkVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TetOrderFailure {
    pub tet: Tet,
    pub cycle: [VertexId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TetOrderCondition {
    pub pass: bool,
    pub failures: Vec<TetOrderFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub pass: bool,
    pub scc_count: usize,
    /// `(u, v)` such that `v` is not reachable from `u`.
    pub non_reaching: Option<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalOrientationReport {
    pub link_condition: LinkCondition,
    pub tet_order: TetOrderCondition,
    pub recurrence: Recurrence,
}

impl LocalOrientationReport {
    pub fn passes(&self) -> bool {
        self.link_condition.pass && self.tet_order.pass && self.recurrence.pass
    }
}

pub fn check_local_orientation(
    t: &Triangulation,
    d: &Direction,
) -> Result<LocalOrientationReport, DirectionError> {
    d.ensure_matches(t)?;
    Ok(LocalOrientationReport {
        link_condition: link_condition(t, d),
        tet_order: tet_order_condition(t, d),
        recurrence: recurrence(t, d),
    })
}

pub fn link_condition(t: &Triangulation, d: &Direction) -> LinkCondition {
    let vertices: Vec<VertexLinkVerdict> = t
        .vertices()
        .iter()
        .map(|&v| {
            let link = t.vertex_link(v).expect("vertex of t");
            let link_edges = link.edges();
            let (outgoing, incoming): (Vec<VertexId>, Vec<VertexId>) =
                link.vertices.iter().partition(|&&w| d.points(v, w) == Some(true));
            let outgoing_connected = induced_connected(&outgoing, &link_edges);
            let incoming_connected = induced_connected(&incoming, &link_edges);
            VertexLinkVerdict {
                vertex: v,
                pass: outgoing_connected && incoming_connected,
                outgoing,
                incoming,
                outgoing_connected,
                incoming_connected,
            }
        })
        .collect();
    let failing_vertices: Vec<VertexId> = vertices.iter().filter(|r| !r.pass).map(|r| r.vertex).collect();
    LinkCondition {
        pass: failing_vertices.is_empty(),
        failing_vertices,
        vertices,
    }
}

/// Whether the subgraph induced on `set` is nonempty and connected.
fn induced_connected(set: &[VertexId], edges: &[Edge]) -> bool {
    if set.is_empty() {
        return false;
    }
    let index: HashMap<VertexId, usize> = set.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(set.len());
    for [a, b] in edges {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            uf.union(i, j);
        }
    }
    uf.count() == 1
}

pub fn tet_order_condition(t: &Triangulation, d: &Direction) -> TetOrderCondition {
    let failures: Vec<TetOrderFailure> = t
        .tets()
        .iter()
        .filter_map(|tet| d.tet_order(tet).err().map(|cycle| TetOrderFailure { tet: *tet, cycle }))
        .collect();
    TetOrderCondition {
        pass: failures.is_empty(),
        failures,
    }
}

pub fn recurrence(t: &Triangulation, d: &Direction) -> Recurrence {
    let adj = d.adjacency(t);
    let (_, scc_count) = strongly_connected_components(&adj);
    let vs = t.vertices();
    let mut non_reaching = None;
    if scc_count > 1 {
        let forward = reachable_from(&adj, 0);
        if let Some(j) = forward.iter().position(|&r| !r) {
            non_reaching = Some((vs[0], vs[j]));
        } else {
            let mut reverse = vec![Vec::new(); adj.len()];
            for (u, targets) in adj.iter().enumerate() {
                for &v in targets {
                    reverse[v].push(u);
                }
            }
            let backward = reachable_from(&reverse, 0);
            let j = backward.iter().position(|&r| !r).expect("more than one SCC");
            non_reaching = Some((vs[j], vs[0]));
        }
    }
    Recurrence {
        pass: scc_count == 1,
        scc_count,
        non_reaching,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{pentachoron, product, ClosedSurface};

    fn global_order_text() -> String {
        pentachoron().edges().iter().map(|[a, b]| format!("{a} {b}\n")).collect()
    }

    #[test]
    fn parses_global_order() {
        let t = pentachoron();
        let d = Direction::parse(&t, &global_order_text()).unwrap();
        assert_eq!(d, Direction::global_order(&t));
        assert_eq!(d.render(), global_order_text());
    }

    #[test]
    fn nine_lines_miss_an_edge() {
        let t = pentachoron();
        let text: String = global_order_text().lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert_eq!(Direction::parse(&t, &text), Err(DirectionError::MissingEdge([0, 1])));
    }

    #[test]
    fn both_orientations_duplicate() {
        let t = pentachoron();
        let text = format!("{}1 0\n", global_order_text());
        assert_eq!(Direction::parse(&t, &text), Err(DirectionError::DuplicateEdge([0, 1])));
    }

    #[test]
    fn unknown_edge() {
        let t = pentachoron();
        assert_eq!(Direction::parse(&t, "0 9\n"), Err(DirectionError::UnknownEdge(0, 9)));
        assert!(matches!(Direction::parse(&t, "0 1 2\n"), Err(DirectionError::Syntax { line: 1, .. })));
    }

    #[test]
    fn pentachoron_global_order_fails_at_extremes() {
        let t = pentachoron();
        let report = check_local_orientation(&t, &Direction::global_order(&t)).unwrap();
        assert!(report.tet_order.pass);
        assert_eq!(report.link_condition.failing_vertices, vec![0, 4]);
        assert!(report.link_condition.vertices[0].incoming.is_empty());
        assert!(report.link_condition.vertices[4].outgoing.is_empty());
        assert!(!report.recurrence.pass);
        assert_eq!(report.recurrence.scc_count, 5);
        assert_eq!(report.recurrence.non_reaching, Some((1, 0)));
        assert!(!report.passes());
    }

    #[test]
    fn single_flip_of_consecutive_vertices_keeps_a_total_order() {
        // Reversing 0 -> 1 just swaps 0 and 1 in the global order.
        let t = pentachoron();
        let d = Direction::global_order(&t).flipped(0, 1).unwrap();
        assert!(tet_order_condition(&t, &d).pass);
    }

    #[test]
    fn flipped_edge_breaks_tet_order_with_witness() {
        let t = pentachoron();
        let d = Direction::global_order(&t).flipped(0, 1).unwrap().flipped(1, 2).unwrap();
        let report = check_local_orientation(&t, &d).unwrap();
        assert!(!report.tet_order.pass);
        assert_eq!(report.tet_order.failures[0].tet, [0, 1, 2, 3]);
        assert_eq!(report.tet_order.failures[0].cycle, [1, 0, 2]);
    }

    #[test]
    fn product_direction_is_a_local_orientation() {
        let bundle = product(&ClosedSurface::tetrahedron_boundary(), 3).unwrap();
        let report = check_local_orientation(&bundle.triangulation, &bundle.direction).unwrap();
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn mismatched_direction_is_rejected() {
        let bundle = product(&ClosedSurface::tetrahedron_boundary(), 3).unwrap();
        let d = Direction::global_order(&pentachoron());
        assert_eq!(check_local_orientation(&bundle.triangulation, &d), Err(DirectionError::Mismatch));
    }

    #[test]
    fn out_and_in_sets_are_disjoint() {
        let t = pentachoron();
        for d in [Direction::global_order(&t), Direction::global_order(&t).flipped(2, 4).unwrap()] {
            for r in link_condition(&t, &d).vertices {
                assert!(r.outgoing.iter().all(|w| !r.incoming.contains(w)));
                assert_eq!(r.outgoing.len() + r.incoming.len(), 4);
            }
        }
    }
}
