//! Colourings and manifold covers of right-angled hyperbolic polytopes.
//!
//! Facets of a right-angled polytope coloured by vectors of F₂ˢ (linearly
//! independent around every vertex) define manifold covers of the polytope
//! seen as a reflection orbifold. The crate builds the dodecahedron and
//! 120-cell combinatorially, enumerates and extends colourings, glues the
//! covers explicitly, and assembles the full chain that produces closed
//! orientable 3-manifolds tessellated by 16n dodecahedra bounding orientable
//! 4-manifolds tessellated by 32n 120-cells.

pub mod cli;
pub mod colouring;
pub mod cover;
pub mod error;
pub mod f2;
pub mod golden;
pub mod io;
pub mod pipeline;
pub mod polytope;
pub mod search;
pub mod volume;

pub use error::{Error, Result};
