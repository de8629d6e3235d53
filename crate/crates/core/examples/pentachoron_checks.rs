//! Every check on the smallest triangulated 3-sphere.
//!
//! The global vertex order totally orders each tetrahedron, but vertex 0 has
//! no incoming edge and vertex 4 no outgoing one, so neither the link
//! condition nor recurrence holds. The triangle equations are solved by
//! `x(ij) = j - i`, yet the level sets miss the links of 0 and 4: no
//! fibration.

use trifol::direction::check_local_orientation;
use trifol::expansion::check_expanding;
use trifol::fibration::{build_fibration_map, id_difference_weights, solve_triangle_system, verify_vertex_links};
use trifol::generate::pentachoron;
use trifol::Direction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = pentachoron();
    println!("f-vector {:?}, euler characteristic {}", t.f_vector(), t.euler_characteristic());

    let d = Direction::global_order(&t);
    let lo = check_local_orientation(&t, &d)?;
    println!("tet order: {}", lo.tet_order.pass);
    println!("link condition fails at {:?}", lo.link_condition.failing_vertices);
    println!("recurrence: {} ({} SCCs)", lo.recurrence.pass, lo.recurrence.scc_count);

    let e = check_expanding(&t, &d)?;
    println!("Γ: {} nodes, {} arcs, expanding={}", e.graph.nodes.len(), e.graph.arcs.len(), e.expanding);

    let (system, outcome) = solve_triangle_system(&t, &d)?;
    println!("triangle system feasible={} verified={}", outcome.is_feasible(), outcome.verify(&system.matrix));

    let w = id_difference_weights(&t);
    let map = build_fibration_map(&t, &d, &w)?;
    let links = verify_vertex_links(&t, &d, &map);
    for c in &links.vertices {
        println!("  vertex {}: {} circle(s)", c.vertex, c.circles);
    }
    println!("fibration verdict: {}", links.pass);

    // Reversing 0-1 and 1-2 creates the directed triangle 0 -> 2 -> 1 -> 0.
    let flipped = d.flipped(0, 1)?.flipped(1, 2)?;
    let lo = check_local_orientation(&t, &flipped)?;
    for f in &lo.tet_order.failures {
        println!("flipped: tet {:?} has the 3-cycle {:?}", f.tet, f.cycle);
    }
    Ok(())
}
