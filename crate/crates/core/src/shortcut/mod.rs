//! Shortcut systems: sets of short paths whose endpoints become adjacent.

mod knn;
mod map;
mod power;
mod string;
mod system;

pub use knn::{knn_build, knn_crossing_stats, KnnStats};
pub use map::{map_load_cap, map_shortcuts, MapInstance, MapShortcuts, LAKE_LABEL, NATION_LABEL};
pub use power::{power_load_cap, power_shortcuts};
pub use string::{string_shortcuts, CurveArrangement, StringShortcuts};
pub use system::{apply_shortcuts, validate_shortcuts, ShortcutSystem, ShortcutValidation};
