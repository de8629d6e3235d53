//! Exact feasibility with a checkable answer either way.
//!
//! The join of two triangles is a 3-sphere. Orienting one triangle
//! cyclically makes the triangle equations unsolvable in positive numbers:
//! the sum of the equations around that triangle has only non-negative
//! coefficients. The solver returns exactly such a combination.

use trifol::fibration::solve_triangle_system;
use trifol::generate::cycle_join;
use trifol::simplex::{solve_positive_kernel, FeasibilityOutcome, IntMatrix};
use trifol::Direction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntMatrix::new(3, vec![vec![1, 1, -1], vec![0, 1, -2]])?;
    println!("small system: {:?}", solve_positive_kernel(&a)?);

    let t = cycle_join(3, 3)?;
    let mut arcs = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (3, 5)];
    arcs.extend((0..3).flat_map(|a| (3..6).map(move |b| (a, b))));
    let d = Direction::from_arcs(&t, arcs)?;

    let (system, outcome) = solve_triangle_system(&t, &d)?;
    match &outcome {
        FeasibilityOutcome::Feasible { weights } => println!("unexpectedly feasible: {weights:?}"),
        FeasibilityOutcome::Infeasible { certificate, combination } => {
            for (face, y) in system.faces.iter().zip(certificate) {
                if *y != 0 {
                    println!("  {y:+} × equation of face {face:?}");
                }
            }
            println!("combination over the edges: {combination:?}");
        }
    }
    println!("certificate verifies: {}", outcome.verify(&system.matrix));
    Ok(())
}
