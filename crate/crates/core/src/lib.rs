//! Combinatorial foliation structures on triangulated closed 3-manifolds.
//!
//! The crate checks, on concrete simplicial triangulations, the combinatorial
//! conditions under which a 3-manifold carries a transverse foliation in
//! normal form or fibres over the circle:
//!
//! - [`triangulation`]: closed simplicial 3-manifolds, vertex links, `.tri` I/O;
//! - [`generate`]: the pentachoron and triangulated `surface × S¹` bundles;
//! - [`direction`]: edge orientations and the local-orientation conditions;
//! - [`expansion`], [`cover`], [`isoperimetric`]: the expanding graph, cyclic
//!   covers and the isoperimetric constants of a direction;
//! - [`simplex`]: exact positive-kernel feasibility with Farkas certificates;
//! - [`fibration`]: triangle equations, the piecewise-affine circle map,
//!   link verification and fibre extraction;
//! - [`normal`]: normal coordinates, matching equations, Euler characteristic;
//! - [`germ`]: bounded-area disk filling and combinatorial m-germs;
//! - [`cli`] and [`report`]: the command-line front end and its JSON reports.
//!
//! Every runnable example lives in `examples/`; `cargo run --example` lists them.

pub mod cli;
pub mod cover;
pub mod direction;
pub mod expansion;
pub mod fibration;
pub mod generate;
pub mod germ;
pub mod graph;
pub mod isoperimetric;
pub mod normal;
pub mod report;
pub mod simplex;
pub mod triangulation;

pub use direction::Direction;
pub use triangulation::{Triangulation, VertexId};

/// Exact rational numbers used throughout the solver and the circle map.
pub type Rational = num_rational::BigRational;
