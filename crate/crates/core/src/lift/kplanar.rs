use serde::Serialize;

use super::{lift_with_decomposition_unchecked, LiftResult};
use crate::bounds::binomial_usize;
use crate::error::Result;
use crate::graph::{layered_width, HPartition, Layering, TreeDecomposition};
use crate::planar::{connect_components, planarize, triangulate, tripod_partition, Drawing};

/// Outcome of the k-planar pipeline: the generic lift plus the width counted
/// over drawing vertices only, which has a tighter cap.
#[derive(Clone, Debug, Serialize)]
pub struct KPlanarResult {
    pub k: usize,
    pub original_count: usize,
    pub crossing_count: usize,
    /// Layered width of the tripod partition of the planarization.
    pub base_width: usize,
    pub lift: LiftResult,
    /// Width of the lifted partition under the coarse layering, counting
    /// drawing vertices only.
    pub restricted_width: usize,
    pub restricted_cap: usize,
    pub bag_cap: usize,
    pub restricted_ok: bool,
    pub bag_ok: bool,
}

impl KPlanarResult {
    pub fn passed(&self) -> bool {
        self.restricted_ok && self.bag_ok && self.lift.claims.all()
    }
}

/// `18k² + 48k + 30`.
pub fn kplanar_width_cap(k: usize) -> usize {
    18 * k * k + 48 * k + 30
}

/// `C(k + 4, 3)`.
pub fn kplanar_bag_cap(k: usize) -> usize {
    binomial_usize(k + 4, 3)
}

/// Planarizes a k-plane drawing, takes the tripod partition of a
/// triangulation of the planarization and lifts it through the system of
/// edge paths, whose parameters are `(k + 1, 2)`. Disconnected
/// planarizations are joined before triangulating; fewer than three vertices
/// use a single part.
pub fn kplanar_pipeline(drawing: &Drawing, k: usize) -> Result<KPlanarResult> {
    let plan = planarize(drawing, Some(k))?;
    let n = plan.plane.vertex_count();
    let (partition, layering, td) = if n < 3 {
        (
            HPartition::from_assignment_with_count(1, vec![0; n]),
            Layering::from_layer_of(vec![0; n]),
            TreeDecomposition::trivial(1),
        )
    } else {
        // The planarization is treated as an ordinary plane graph from here
        // on, so triangulation may add chords at crossing vertices.
        let mut plane = plan.plane.clone();
        for c in plane.crossing_vertices() {
            plane.set_crossing(c, false);
        }
        let tri = triangulate(&connect_components(&plane))?;
        let tp = tripod_partition(&tri)?;
        (tp.partition, tp.levels, tp.decomposition)
    };
    let base_width = layered_width(&partition, &layering, None);
    let lift = lift_with_decomposition_unchecked(&plan.shortcuts, &partition, &layering, &td)?;
    let original: Vec<bool> = (0..n).map(|v| v < plan.original_count).collect();
    let restricted_width = layered_width(&lift.partition, &lift.coarse_layering, Some(&original));
    let restricted_cap = kplanar_width_cap(k);
    let bag_cap = kplanar_bag_cap(k);
    Ok(KPlanarResult {
        k,
        original_count: plan.original_count,
        crossing_count: plan.crossing_count(),
        base_width,
        restricted_ok: restricted_width <= restricted_cap,
        bag_ok: lift.max_bag <= bag_cap,
        lift,
        restricted_width,
        restricted_cap,
        bag_cap,
    })
}
