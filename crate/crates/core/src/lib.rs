//! Exact computation of uncolourability measures of cubic graphs: colouring
//! defect, cores, oddness, resistance, density, girth and cyclic
//! connectivity, together with the superposition construction of snarks of
//! prescribed girth and oddness two.

pub mod assembly;
pub mod cages;
pub mod certificate;
pub mod cli;
pub mod colour;
pub mod colouring;
pub mod error;
pub mod graph;
pub mod io;
pub mod matchings;
pub mod measures;
pub mod multipole;
pub mod named;
pub mod search;
pub mod superposition;

pub use colour::{parity_check, BoundaryVector, Colour, ColourPermutation};
pub use error::{Error, Result};
pub use graph::Graph;
pub use colouring::{EdgeColouring, KleinFlow};
pub use search::{Budget, Outcome};
pub use multipole::{Diagnostics, Edge, End, HalfEdge, Issue, Multipole};
