//! Surface bundles over the circle and their fibers.
//!
//! For `S² × S¹` and `T² × S¹` the solver finds positive weights, every
//! vertex link meets a level set in one circle, and the preimage of a
//! generic point is a copy of the surface, recovered here as a normal
//! surface with its Euler characteristic.

use trifol::direction::check_local_orientation;
use trifol::fibration::{build_fibration_map, default_theta, extract_fiber, solve_triangle_system, verify_vertex_links};
use trifol::generate::{is_monotone, product, ClosedSurface};
use trifol::normal::{surface_stats, validate_normal_vector};
use trifol::simplex::FeasibilityOutcome;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, surface) in [
        ("S²", ClosedSurface::tetrahedron_boundary()),
        ("T²", ClosedSurface::seven_vertex_torus()),
    ] {
        let b = product(&surface, 3)?;
        let (t, d) = (&b.triangulation, &b.direction);
        println!("{name}×S¹: f-vector {:?}, monotone={}", t.f_vector(), is_monotone(&b));
        println!("  local orientation: {}", check_local_orientation(t, d)?.passes());

        let (_, outcome) = solve_triangle_system(t, d)?;
        let FeasibilityOutcome::Feasible { weights } = outcome else {
            return Err("triangle system should be feasible".into());
        };
        let map = build_fibration_map(t, d, &weights)?;
        println!("  weights up to {}, period {}", weights.iter().max().unwrap(), map.period);

        let links = verify_vertex_links(t, d, &map);
        println!("  all vertex links one circle: {}", links.pass);

        let theta = default_theta(&map);
        let fiber = extract_fiber(t, d, &map, &theta)?;
        let stats = surface_stats(t, &fiber)?;
        println!(
            "  fiber at {theta}: valid={}, χ={}, {} component(s), {} pieces",
            validate_normal_vector(t, &fiber).valid,
            stats.euler_characteristic,
            stats.component_count,
            stats.piece_count
        );
    }
    Ok(())
}
