//! Graph coloring toolkit centered on greedy-coloring quality measures:
//! the grundy, partial grundy, and b-chromatic numbers, alongside the
//! chromatic number, with exact solvers, brute-force oracles, witness
//! verification, chordal-graph specializations, graph construction and
//! serialization, and a deterministic ad hoc network simulator whose
//! stable states realize these colorings.

pub mod chordal;
pub mod coloring;
pub mod exact;
pub mod graph;
pub mod io;
pub mod sim;

mod error;

pub use error::{Error, Result};

pub use coloring::{
    first_fit, parameter_bounds, verify, BoundsReport, Coloring, ColoringKind, Counterexample,
    VertexOrder, WitnessReport,
};
pub use exact::{exact_parameter, exact_parameter_with_limit, ExactSolution};
pub use graph::{build_family, FamilySpec, Graph};
