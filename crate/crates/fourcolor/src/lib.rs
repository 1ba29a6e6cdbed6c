//! Plane-triangulation coloring workbench.
//!
//! The pipeline: build or generate a plane graph as a rotation system
//! ([`graph`]), triangulate it, then four-color it by induction ([`colorer`]):
//! separating triangles split the graph, a minimum-degree vertex is removed
//! otherwise, and the ring of its neighbors is recolored through residual-set
//! analysis and edge contraction ([`ring`]). Exact backtracking and Kempe
//! five-coloring baselines live in [`oracle`]; the machine enumeration of
//! ring configurations lives in [`atlas`]; generators, file formats, the fuzz
//! harness and run records live in [`workbench`].

pub mod atlas;
pub mod colorer;
pub mod graph;
pub mod oracle;
pub mod ring;
pub mod workbench;

pub use colorer::{four_color, Budget, Coloring, Trace};
pub use graph::{RotationGraph, VertexId};
