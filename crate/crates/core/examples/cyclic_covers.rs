//! Cyclic covers from edge weights, and local orientations lifting to them.
//!
//! The number of components of the `n`-fold cover is `gcd(n, g)` where `g`
//! generates the subgroup of cycle sums. When the cover is connected, the
//! lifted direction is again a local orientation.

use trifol::cover::cyclic_cover;
use trifol::direction::check_local_orientation;
use trifol::fibration::{cycle_potential, id_difference_weights, solve_triangle_system};
use trifol::generate::{pentachoron, product, ClosedSurface};
use trifol::simplex::FeasibilityOutcome;
use trifol::Direction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = pentachoron();
    let d = Direction::global_order(&t);
    let c = cyclic_cover(&t, &d, &id_difference_weights(&t), 2)?;
    println!("pentachoron, n=2: {} tets, {} components", c.tets, c.components);

    for (name, surface) in [
        ("S²", ClosedSurface::tetrahedron_boundary()),
        ("T²", ClosedSurface::seven_vertex_torus()),
    ] {
        let b = product(&surface, 3)?;
        let (t, d) = (&b.triangulation, &b.direction);
        let FeasibilityOutcome::Feasible { weights } = solve_triangle_system(t, d)?.1 else {
            return Err("expected feasible weights".into());
        };
        let (_, g) = cycle_potential(t, d, &weights);
        for n in 1..=4 {
            let c = cyclic_cover(t, d, &weights, n)?;
            let lifted = if c.components == 1 {
                check_local_orientation(&c.triangulation, &c.direction)?.passes().to_string()
            } else {
                "-".into()
            };
            println!(
                "{name}×S¹ (period {g}), n={n}: {} tets, {} component(s), lifted local orientation: {lifted}",
                c.tets, c.components
            );
        }
    }
    Ok(())
}
