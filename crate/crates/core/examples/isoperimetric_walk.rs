//! The expanding graph Γ and the isoperimetric constant of a recurrent
//! direction.
//!
//! A recurrent direction has a closed directed walk through every edge; its
//! worst edge multiplicity `c1` and the largest edge degree give the
//! constant `K = c1 · maxEdgeDegree / 3`.

use trifol::expansion::check_expanding;
use trifol::generate::{product, ClosedSurface};
use trifol::isoperimetric::isoperimetric_constant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, surface) in [
        ("S²", ClosedSurface::tetrahedron_boundary()),
        ("T²", ClosedSurface::seven_vertex_torus()),
    ] {
        for layers in [3, 4, 6] {
            let b = product(&surface, layers)?;
            let (t, d) = (&b.triangulation, &b.direction);
            let e = check_expanding(t, d)?;
            let k = isoperimetric_constant(t, d)?;
            println!(
                "{name}×S¹, {layers} layers: Γ {} nodes / {} arcs / {} SCCs, expanding={}; walk {} steps, c1={}, K={}",
                e.graph.nodes.len(),
                e.graph.arcs.len(),
                e.graph.scc_count,
                e.expanding,
                k.walk.len() - 1,
                k.c1,
                k.k
            );
        }
    }
    Ok(())
}
