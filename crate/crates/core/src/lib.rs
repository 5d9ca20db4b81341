//! Cut-locus structures on finite multigraphs.
//!
//! A cut-locus structure (CL-structure) on a graph is a fattening of its
//! cyclic part into a surface with a single boundary circle. Combinatorially
//! that is a rotation system plus a twist bit per edge whose boundary walk
//! closes up in one orbit pair. This crate builds those objects, traces their
//! boundaries, classifies them on small cubic graphs, and reduces structures
//! on higher-degree graphs to cubic ones.

pub mod classify;
pub mod error;
pub mod format;
pub mod multigraph;
pub mod reduce;
pub mod render;
pub mod scheme;
pub mod verify;

pub use classify::{Catalog, Realizability, SearchConfig, StructureClass};
pub use error::{ClassifyError, Error, GraphError, ParseError, ReduceError, SchemeError};
pub use multigraph::{Automorphism, CanonicalForm, Component, Dart, Decomposition, EdgeSet, Multigraph, Subgraph};
pub use reduce::{ReductionStep, TreeShape};
pub use scheme::{BoundaryTrace, DartSide, Rotation, Scheme, Signs, SurfaceType};
