//! Germs of bounded paths and their oriented-loop test.
//!
//! On the flipped pentachoron the directed triangle 1 -> 0 -> 2 -> 1 bounds a
//! face, so its endpoints collapse and the germ at 1 has an oriented loop. On
//! the S²×S¹ bundle every directed loop winds around the circle, and the
//! germs stay acyclic.

use std::time::Instant;

use trifol::generate::{pentachoron, product, ClosedSurface};
use trifol::germ::{build_germ, build_germ_with, germ_acyclic, AreaFiller, GermOptions};
use trifol::Direction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = pentachoron();
    let d = Direction::global_order(&t).flipped(0, 1)?.flipped(1, 2)?;
    let g = build_germ(&t, &d, 1, 3)?;
    let verdict = germ_acyclic(&g);
    println!(
        "flipped pentachoron, base 1, m=3: {} nodes, {} arcs, acyclic={}",
        g.nodes.len(),
        g.arcs.len(),
        verdict.acyclic
    );
    if let Some(w) = verdict.witness {
        println!("  oriented loop through endpoints {:?}", w.vertices);
    }

    let bundle = product(&ClosedSurface::tetrahedron_boundary(), 3)?;
    let mut filler = AreaFiller::new(&bundle.triangulation);
    for m in 0..=4 {
        let start = Instant::now();
        let mut nodes = Vec::new();
        let mut all_acyclic = true;
        for &p in bundle.triangulation.vertices() {
            let g = build_germ_with(&mut filler, &bundle.direction, p, m, GermOptions::default())?;
            all_acyclic &= germ_acyclic(&g).acyclic;
            nodes.push(g.nodes.len());
        }
        println!(
            "S²×S¹, m={m}: node counts {nodes:?}, all acyclic={all_acyclic} ({:.2?})",
            start.elapsed()
        );
    }
    Ok(())
}
