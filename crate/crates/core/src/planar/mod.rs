//! Embedded graphs: rotation systems, planarization of straight-line
//! drawings, triangulation, BFS layerings and tripod partitions.

mod drawing;
mod embedding;
mod one_planar;
mod triangulate;
mod tripod;

pub use drawing::{planarize, Drawing, Planarization};
pub use embedding::{Dart, Faces, PlaneGraph, CROSSING_LABEL};
pub use one_planar::{edge_maximalize_1plane, one_planar_partition, OnePlanarPartition};
pub use triangulate::{bfs_layering, connect_components, triangulate};
pub use tripod::{tripod_partition, KiteInfo, Tripod, TripodPartition};
