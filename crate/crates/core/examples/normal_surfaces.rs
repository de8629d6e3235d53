//! Normal coordinates: vertex links, sums and their Euler characteristics.

use trifol::generate::{product, ClosedSurface};
use trifol::normal::{surface_stats, validate_normal_vector, NormalVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = product(&ClosedSurface::seven_vertex_torus(), 3)?;
    let t = &b.triangulation;
    let link = NormalVector::vertex_link(t, 0);
    let s = surface_stats(t, &link)?;
    println!("link of 0: {} triangles, χ={}, {} component(s)", s.piece_count, s.euler_characteristic, s.component_count);

    let sum = link.add(&NormalVector::vertex_link(t, 7)).add(&NormalVector::vertex_link(t, 0));
    let s = surface_stats(t, &sum)?;
    println!("link(0) + link(7) + link(0): χ={}, {} components", s.euler_characteristic, s.component_count);

    let mut bad = NormalVector::zero(t);
    bad.coords[0][4] = 1;
    bad.coords[0][5] = 1;
    let v = validate_normal_vector(t, &bad);
    println!("two quad types in one tet: valid={} ({:?})", v.valid, v.violation);

    let text = link.render();
    println!("first .nsv lines:\n{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));
    Ok(())
}
