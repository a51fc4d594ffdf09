//! Lifting an `H`-partition of `G` through a shortcut system to a
//! `J`-partition of `G^P` with bounded layered width and a tree
//! decomposition of `J` over a normalized tree.

mod hierarchy;
mod kplanar;
mod normalize;
mod partition;

pub use hierarchy::{hierarchy, hierarchy_unchecked, HierarchyChecks, HierarchySets};
pub use kplanar::{kplanar_bag_cap, kplanar_pipeline, kplanar_width_cap, KPlanarResult};
pub use normalize::{normalize, NormalizedDecomposition};
pub use partition::{
    anchors, lift_partition, lift_partition_unchecked, lift_with_decomposition,
    lift_with_decomposition_unchecked, part_graph, LiftClaims, LiftResult,
};
