//! Layered partitions and product structure for graphs that are built from
//! shortcut systems over graphs of bounded layered treewidth.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: graphs, layerings, partitions, tree decompositions, exact and
//!   heuristic treewidth, planarity testing.
//! * [`planar`]: embedded graphs, planarization of straight-line drawings,
//!   triangulation, BFS layerings and the tripod partition of plane and
//!   1-plane triangulations.
//! * [`shortcut`]: shortcut systems and their constructors for powers, map
//!   graphs, string graphs and k-nearest-neighbour graphs.
//! * [`lift`]: normalized tree decompositions, anchors and the lifted
//!   partition of `G^P`.
//! * [`colouring`]: p-centered colourings and checkers for p-centered,
//!   non-repetitive and queue-layout claims, plus the bound table.
//! * [`generate`], [`pipeline`], [`dot`]: instance generators, end-to-end
//!   pipelines with reports, and DOT export.

pub mod bounds;
pub mod colouring;
pub mod dot;
pub mod error;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod lift;
pub mod pipeline;
pub mod planar;
pub mod shortcut;

pub use error::{Error, Result};
pub use graph::{Graph, HPartition, Layering, TreeDecomposition};
