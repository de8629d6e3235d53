//! The expanding graph Γ of a direction.
//!
//! Γ has one node per edge of the triangulation. Every face, whose vertices
//! are totally ordered `a -> b -> c` by the direction, contributes two arcs
//! into its *long* edge `ac`: one from the *lower* short edge `ab` and one
//! from the *upper* short edge `bc`. A direction is *expanding* when some
//! face has both of its arcs lying on directed loops of Γ.

use serde::Serialize;
use thiserror::Error;

use crate::direction::Direction;
use crate::graph::strongly_connected_components;
use crate::triangulation::{Edge, Face, Tet, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("tetrahedron {tet:?} contains the directed 3-cycle {cycle:?}")]
    NoTotalOrder { tet: Tet, cycle: [u32; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShortSide {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaArc {
    /// Index of the short edge.
    pub from: usize,
    /// Index of the long edge.
    pub to: usize,
    pub side: ShortSide,
    /// Index of the face that induced the arc.
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionGraph {
    /// Nodes of Γ, in the triangulation's canonical edge order.
    pub nodes: Vec<Edge>,
    /// Two arcs per face (lower then upper), faces in canonical order.
    /// Parallel arcs from different faces are kept.
    pub arcs: Vec<GammaArc>,
    pub scc_id: Vec<usize>,
    pub scc_count: usize,
}

impl ExpansionGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for arc in &self.arcs {
            adj[arc.from].push(arc.to);
        }
        adj
    }

    /// An arc lies on a directed loop iff its endpoints share an SCC.
    pub fn arc_on_loop(&self, arc: &GammaArc) -> bool {
        self.scc_id[arc.from] == self.scc_id[arc.to]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub graph: ExpansionGraph,
    pub expanding: bool,
    /// The first face (canonical order) whose two arcs lie on loops.
    pub witness_face: Option<Face>,
}

/// Builds Γ and decides whether the direction is expanding.
pub fn check_expanding(t: &Triangulation, d: &Direction) -> Result<ExpansionReport, ExpansionError> {
    for tet in t.tets() {
        if let Err(cycle) = d.tet_order(tet) {
            return Err(ExpansionError::NoTotalOrder { tet: *tet, cycle });
        }
    }
    let idx = |a, b| t.edge_index(a, b).expect("face edge");
    let mut arcs = Vec::with_capacity(2 * t.faces().len());
    for (fi, f) in t.faces().iter().enumerate() {
        let [a, b, c] = d.face_order(f).expect("faces of ordered tets are ordered");
        let long = idx(a, c);
        arcs.push(GammaArc { from: idx(a, b), to: long, side: ShortSide::Lower, face: fi });
        arcs.push(GammaArc { from: idx(b, c), to: long, side: ShortSide::Upper, face: fi });
    }
    let mut graph = ExpansionGraph {
        nodes: t.edges().to_vec(),
        arcs,
        scc_id: Vec::new(),
        scc_count: 0,
    };
    let (scc_id, scc_count) = strongly_connected_components(&graph.adjacency());
    graph.scc_id = scc_id;
    graph.scc_count = scc_count;

    let witness_face = graph
        .arcs
        .chunks(2)
        .find(|pair| pair.iter().all(|arc| graph.arc_on_loop(arc)))
        .map(|pair| t.faces()[pair[0].face]);
    Ok(ExpansionReport {
        expanding: witness_face.is_some(),
        witness_face,
        graph,
    })
}
