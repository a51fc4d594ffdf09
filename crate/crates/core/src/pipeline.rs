//! End-to-end pipelines: build a base partition and a shortcut system for
//! one graph class, lift, optionally colour, and report every measured
//! quantity against its cap.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::binomial_usize;
use crate::colouring::{
    bound_report, check_p_centered, check_queue_layout, chi_p_small, greedy_queue_layout,
    lift_p_centered, BoundReport, ChiMode, Colouring, DEFAULT_CHECKER_CAP, DEFAULT_CHI_CAP,
};
use crate::error::{Error, Result};
use crate::geom::{self, Contact, IPoint};
use crate::graph::{
    bfs_forest_layering, exact_treewidth, is_planar, layered_width, quotient, treewidth,
    validate_layering, validate_tree_decomposition, Graph, HPartition, Layering, TreeDecomposition,
    TreewidthMode, DEFAULT_EXACT_CAP,
};
use crate::lift::{kplanar_pipeline, lift_with_decomposition_unchecked, part_graph, LiftResult};
use crate::planar::{
    connect_components, edge_maximalize_1plane, one_planar_partition, planarize, triangulate,
    tripod_partition, Drawing, PlaneGraph,
};
use crate::shortcut::{
    apply_shortcuts, knn_build, knn_crossing_stats, map_load_cap, map_shortcuts, power_load_cap,
    power_shortcuts, string_shortcuts, validate_shortcuts, CurveArrangement, MapInstance,
    ShortcutSystem,
};

/// Oracle depth and colouring settings shared by every pipeline.
#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Exact treewidth runs on quotients with at most this many vertices;
    /// 0 disables it.
    pub exact_tw_cap: usize,
    /// Exact χ_p search runs on quotients with at most this many vertices.
    pub chi_cap: usize,
    /// The exhaustive p-centered checker runs up to this many vertices.
    pub checker_cap: usize,
    /// Build and check a p-centered colouring for this `p`.
    pub colour_p: Option<usize>,
    /// Seed recorded in the report, if the instance was generated.
    pub seed: Option<u64>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            exact_tw_cap: DEFAULT_EXACT_CAP,
            chi_cap: DEFAULT_CHI_CAP,
            checker_cap: DEFAULT_CHECKER_CAP,
            colour_p: None,
            seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Artifacts kept for export; not serialized.
#[derive(Clone, Debug, Default)]
pub struct Artifacts {
    pub graph: Option<Graph>,
    pub partition: Option<HPartition>,
    pub decomposition: Option<TreeDecomposition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub class: String,
    pub params: BTreeMap<String, Value>,
    pub measured: BTreeMap<String, Value>,
    pub caps: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    pub bounds: Option<BoundReport>,
    pub seed: Option<u64>,
    /// Conjunction of all claims.
    pub passed: bool,
    #[serde(skip)]
    pub artifacts: Artifacts,
}

impl PipelineReport {
    fn new(class: &str, opts: &PipelineOptions) -> Self {
        PipelineReport {
            class: class.into(),
            params: BTreeMap::new(),
            measured: BTreeMap::new(),
            caps: BTreeMap::new(),
            claims: Vec::new(),
            bounds: None,
            seed: opts.seed,
            passed: true,
            artifacts: Artifacts::default(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl Serialize) {
        self.params.insert(k.into(), json!(v));
    }

    pub fn measure(&mut self, k: &str, v: impl Serialize) {
        self.measured.insert(k.into(), json!(v));
    }

    pub fn cap(&mut self, k: &str, v: impl Serialize) {
        self.caps.insert(k.into(), json!(v));
    }

    pub fn claim(&mut self, name: &str, pass: bool, detail: Option<String>) {
        self.passed &= pass;
        self.claims.push(Claim {
            name: name.into(),
            pass,
            detail,
        });
    }

    /// Records `measured ≤ cap` as a claim named after the quantity.
    pub fn bounded(&mut self, name: &str, measured: usize, cap: usize) {
        self.measure(name, measured);
        self.cap(name, cap);
        self.claim(name, measured <= cap, Some(format!("{measured} ≤ {cap}")));
    }

    pub fn claim_passed(&self, name: &str) -> Option<bool> {
        self.claims.iter().find(|c| c.name == name).map(|c| c.pass)
    }

    pub fn measured_usize(&self, name: &str) -> Option<usize> {
        self.measured.get(name)?.as_u64().map(|v| v as usize)
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name,
        source: Box::new(e),
    })
}

fn params(kv: &[(&str, usize)]) -> BTreeMap<String, u64> {
    kv.iter().map(|&(k, v)| (k.to_string(), v as u64)).collect()
}

/// Treewidth of `h` (exact if small enough), recorded against `cap`.
fn exact_treewidth_claim(
    r: &mut PipelineReport,
    name: &str,
    h: &Graph,
    cap: usize,
    opts: &PipelineOptions,
) {
    if h.vertex_count() <= opts.exact_tw_cap {
        if let Ok(tw) = exact_treewidth(h, opts.exact_tw_cap) {
            r.bounded(name, tw.width, cap);
        }
    }
}

/// Records every measured quantity and claim of a lift.
fn record_lift(r: &mut PipelineReport, lift: &LiftResult, opts: &PipelineOptions) {
    r.measure("k", lift.k);
    r.measure("d", lift.d);
    r.measure("base_layered_width", lift.ell);
    r.measure("base_treewidth", lift.t);
    r.measure("lifted_parts", lift.j.vertex_count());
    r.bounded("fine_layered_width", lift.fine_width, lift.fine_cap);
    r.bounded("layered_width", lift.coarse_width, lift.coarse_cap);
    r.bounded("bag_size", lift.max_bag, lift.bag_cap);
    for (name, pass) in lift.claims.list() {
        r.claim(&format!("lift.{name}"), pass, None);
    }
    exact_treewidth_claim(
        r,
        "lifted_treewidth",
        &lift.j,
        lift.bag_cap.saturating_sub(1),
        opts,
    );
    r.artifacts = Artifacts {
        graph: Some(lift.shortcut_graph.clone()),
        partition: Some(lift.partition.clone()),
        decomposition: Some(lift.decomposition.clone()),
    };
}

/// Colours the quotient `h` (vertex `i` is part `h_parts[i]`), lifts the
/// colouring to `g` and checks it; also lays `g` out in queues.
#[allow(clippy::too_many_arguments)]
fn colour_stage(
    r: &mut PipelineReport,
    g: &Graph,
    partition: &HPartition,
    layering: &Layering,
    ell: usize,
    h: &Graph,
    h_parts: &[usize],
    h_width: usize,
    opts: &PipelineOptions,
) -> Result<()> {
    let Some(p) = opts.colour_p else {
        return Ok(());
    };
    r.param("p", p);
    let mode = if h.vertex_count() <= opts.chi_cap {
        ChiMode::Exact
    } else {
        ChiMode::Heuristic
    };
    let gamma_h = stage("quotient colouring", chi_p_small(h, p, mode, opts.chi_cap))?;
    let used_h = gamma_h.colour_count();
    r.measure("quotient_colours", used_h);
    r.measure("quotient_colouring_exact", mode == ChiMode::Exact);
    // Reported only: the cap holds for optimal colourings, not necessarily
    // for heuristic ones.
    let cap_h = binomial_usize(p + h_width, h_width);
    r.cap("quotient_colours", cap_h);
    r.measure("quotient_colours_within_cap", used_h <= cap_h);
    let mut gamma = vec![0; partition.part_count()];
    for (i, &x) in h_parts.iter().enumerate() {
        gamma[x] = gamma_h.colour(i);
    }
    let c = stage(
        "product colouring",
        lift_p_centered(g, partition, layering, ell, p, &Colouring::new(gamma)),
    )?;
    r.bounded("colours", c.colour_count(), ell * (p + 1) * used_h);
    if g.vertex_count() <= opts.checker_cap {
        let w = stage(
            "p-centered check",
            check_p_centered(g, p, &c.to_colouring(), opts.checker_cap),
        )?;
        r.claim(
            "p_centered",
            w.is_none(),
            w.map(|w| format!("violated on {w:?}")),
        );
    }
    let q = stage("queue layout", greedy_queue_layout(g, None))?;
    r.measure("greedy_queue_number", q.queue_count());
    let nested = stage("queue check", check_queue_layout(g, &q))?;
    r.claim("queue_layout", nested.is_none(), None);
    Ok(())
}

/// Colour stage driven by a lift: the quotient is `J`.
fn colour_lift(r: &mut PipelineReport, lift: &LiftResult, opts: &PipelineOptions) -> Result<()> {
    colour_stage(
        r,
        &lift.shortcut_graph,
        &lift.partition,
        &lift.coarse_layering,
        lift.coarse_width,
        &lift.j,
        &lift.j_parts,
        lift.bag_cap.saturating_sub(1),
        opts,
    )
}

/// Singleton parts, BFS layering per component and a tree decomposition of
/// the graph itself (exact when small enough).
fn generic_base(
    g: &Graph,
    opts: &PipelineOptions,
) -> Result<(HPartition, Layering, TreeDecomposition)> {
    let mode = if g.vertex_count() <= opts.exact_tw_cap {
        TreewidthMode::Exact
    } else {
        TreewidthMode::Heuristic
    };
    let tw = treewidth(g, mode, opts.exact_tw_cap)?;
    Ok((
        HPartition::singletons(g.vertex_count()),
        bfs_forest_layering(g),
        tw.decomposition,
    ))
}

/// Tripod partition of a triangulation of `plane` (joined first if
/// disconnected). Fewer than three vertices give one part.
fn tripod_base(plane: &PlaneGraph) -> Result<(HPartition, Layering, TreeDecomposition)> {
    let n = plane.vertex_count();
    if n < 3 {
        return Ok((
            HPartition::from_assignment_with_count(1, vec![0; n]),
            Layering::from_layer_of(vec![0; n]),
            TreeDecomposition::trivial(1),
        ));
    }
    let tri = triangulate(&connect_components(plane))?;
    let tp = tripod_partition(&tri)?;
    Ok((tp.partition, tp.levels, tp.decomposition))
}

/// Planarizes a k-plane drawing and lifts the tripod partition of its
/// planarization. `k` defaults to the largest number of crossings on an
/// edge.
pub fn run_kplanar(
    d: &Drawing,
    k: Option<usize>,
    opts: &PipelineOptions,
) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("kplanar", opts);
    let k = match k {
        Some(k) => k,
        None => stage("planarize", planarize(d, None))?.max_crossings_per_edge(),
    };
    r.param("k", k);
    r.param("n", d.points.len());
    r.param("m", d.edges.len());
    let res = stage("k-planar lift", kplanar_pipeline(d, k))?;
    r.measure("crossings", res.crossing_count);
    r.measure("tripod_layered_width", res.base_width);
    record_lift(&mut r, &res.lift, opts);
    r.bounded(
        "original_layered_width",
        res.restricted_width,
        res.restricted_cap,
    );
    r.bounded("kplanar_bag_size", res.lift.max_bag, res.bag_cap);
    colour_lift(&mut r, &res.lift, opts)?;
    r.bounds = Some(bound_report("kplanar", &params(&[("k", k)]))?);
    Ok(r)
}

/// Edge-maximalizes a 1-plane planarization and takes its tripod partition
/// with paired BFS levels.
pub fn run_one_planar(g: &PlaneGraph, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("1planar", opts);
    r.param("n", g.vertex_count() - g.crossing_vertices().len());
    r.param("crossings", g.crossing_vertices().len());
    let max = stage("edge maximalization", edge_maximalize_1plane(g))?;
    let op = stage("1-planar partition", one_planar_partition(&max))?;
    r.bounded(
        "level_width",
        layered_width(&op.partition, &op.levels, None),
        15,
    );
    let width = layered_width(&op.partition, &op.layering, None);
    r.bounded("layered_width", width, 30);
    let bad = validate_layering(&op.graph, &op.layering)?;
    r.claim("layering_valid", bad.is_empty(), None);
    let q = quotient(&op.graph, &op.partition)?;
    r.claim("quotient_planar", is_planar(&q.graph), None);
    let td = validate_tree_decomposition(&q.graph, &op.decomposition);
    r.claim("decomposition_valid", td.valid, None);
    r.bounded("bag_size", op.decomposition.max_bag_size(), 4);
    exact_treewidth_claim(&mut r, "quotient_treewidth", &q.graph, 3, opts);
    colour_stage(
        &mut r,
        &op.graph,
        &op.partition,
        &op.layering,
        width,
        &q.graph,
        &q.part_ids,
        3,
        opts,
    )?;
    r.artifacts = Artifacts {
        graph: Some(op.graph.clone()),
        partition: Some(op.partition.clone()),
        decomposition: Some(op.decomposition.clone()),
    };
    r.bounds = Some(bound_report("1planar", &BTreeMap::new())?);
    Ok(r)
}

/// A shortcut system over a graph together with a base partition, and
/// optionally a layering and a tree decomposition of the part graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShortcutInstance {
    pub system: ShortcutSystem,
    pub partition: HPartition,
    #[serde(default)]
    pub layering: Option<Layering>,
    #[serde(default)]
    pub decomposition: Option<TreeDecomposition>,
}

/// Lifts a user-supplied base partition through a shortcut system. A
/// missing layering is taken by BFS; a missing decomposition is computed.
pub fn run_shortcut(inst: &ShortcutInstance, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("shortcut", opts);
    let g = &inst.system.base;
    r.param("n", g.vertex_count());
    r.param("paths", inst.system.paths.len());
    r.param("declared_k", inst.system.declared_k);
    r.param("declared_d", inst.system.declared_d);
    let layering = inst
        .layering
        .clone()
        .unwrap_or_else(|| bfs_forest_layering(g));
    let td = match &inst.decomposition {
        Some(td) => td.clone(),
        None => {
            let h = part_graph(g, &inst.partition);
            let mode = if h.vertex_count() <= opts.exact_tw_cap {
                TreewidthMode::Exact
            } else {
                TreewidthMode::Heuristic
            };
            stage("base decomposition", treewidth(&h, mode, opts.exact_tw_cap))?.decomposition
        }
    };
    let lift = stage(
        "lift",
        lift_with_decomposition_unchecked(&inst.system, &inst.partition, &layering, &td),
    )?;
    record_lift(&mut r, &lift, opts);
    colour_lift(&mut r, &lift, opts)?;
    r.bounds = Some(bound_report(
        "shortcut",
        &params(&[
            ("k", lift.k),
            ("d", lift.d),
            ("ell", lift.ell),
            ("t", lift.t),
        ]),
    )?);
    Ok(r)
}

/// `G^k` by all-pairs BFS.
pub fn power_by_distances(g: &Graph, k: usize) -> Graph {
    let n = g.vertex_count();
    let mut out = Graph::new(n);
    for v in 0..n {
        for (w, d) in g.bfs_distances(v).into_iter().enumerate() {
            if w > v && d.is_some_and(|d| d <= k) {
                out.add_edge(v, w);
            }
        }
    }
    out
}

/// Lifts the generic base of `g` through the shortest-path system of `G^k`.
pub fn run_power(g: &Graph, k: usize, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("power", opts);
    r.param("n", g.vertex_count());
    r.param("k", k);
    let delta = g.max_degree();
    r.param("max_degree", delta);
    let system = stage("power shortcuts", power_shortcuts(g, k))?;
    let v = validate_shortcuts(&system);
    r.claim("paths_valid", v.violations.is_empty(), None);
    r.bounded("shortcut_length", v.k_actual, k);
    r.bounded("shortcut_load", v.d_actual, power_load_cap(k, delta));
    r.claim(
        "power_oracle",
        apply_shortcuts(&system).same_edges(&power_by_distances(g, k)),
        None,
    );
    let (p, l, td) = stage("base partition", generic_base(g, opts))?;
    let lift = stage(
        "lift",
        lift_with_decomposition_unchecked(&system, &p, &l, &td),
    )?;
    record_lift(&mut r, &lift, opts);
    colour_lift(&mut r, &lift, opts)?;
    r.bounds = Some(bound_report(
        "power",
        &params(&[("k", k), ("delta", delta), ("ell", lift.ell), ("t", lift.t)]),
    )?);
    Ok(r)
}

/// Builds the nation/vertex graph and its length-2 system, checks the map
/// graph against the face-incidence definition, and lifts the tripod
/// partition of the nation/vertex graph. The declared load is raised to the
/// measured one when it falls short so that the lift can proceed; the
/// shortfall is reported as a failed claim.
pub fn run_map(m: &MapInstance, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("map", opts);
    let ms = stage("map shortcuts", map_shortcuts(m, 0))?;
    let d = m.max_nations();
    r.param("nations", m.nations().len());
    r.param("d", d);
    let v = validate_shortcuts(&ms.system);
    r.claim("paths_valid", v.violations.is_empty(), None);
    r.bounded("shortcut_length", v.k_actual, 2);
    r.bounded("shortcut_load", v.d_actual, map_load_cap(d));
    r.bounded(
        "shortcut_load_pairs",
        v.d_actual,
        d * d.saturating_sub(1) / 2,
    );
    let applied = apply_shortcuts(&ms.system).induced_subgraph(&ms.nation_vertices);
    r.claim("map_graph_oracle", applied.same_edges(&m.map_graph()), None);
    let mut system = ms.system.clone();
    system.declared_d = system.declared_d.max(v.d_actual);
    let (p, l, td) = stage("base partition", tripod_base(&ms.g1))?;
    let lift = stage(
        "lift",
        lift_with_decomposition_unchecked(&system, &p, &l, &td),
    )?;
    record_lift(&mut r, &lift, opts);
    colour_lift(&mut r, &lift, opts)?;
    r.bounds = Some(bound_report("map", &params(&[("d", d)]))?);
    Ok(r)
}

/// The intersection graph of polyline curves, computed segment by segment.
pub fn curve_intersection_graph(a: &CurveArrangement) -> Result<Graph> {
    let flat: Vec<_> = a.curves.iter().flatten().cloned().collect();
    let pts = geom::to_integer_points(&flat)?;
    let mut curves: Vec<&[IPoint]> = Vec::new();
    let mut i = 0;
    for c in &a.curves {
        curves.push(&pts[i..i + c.len()]);
        i += c.len();
    }
    let mut g = Graph::new(curves.len());
    for x in 0..curves.len() {
        for y in x + 1..curves.len() {
            let meet = curves[x].windows(2).any(|s| {
                curves[y]
                    .windows(2)
                    .any(|t| geom::segment_contact(s[0], s[1], t[0], t[1]) != Contact::Disjoint)
            });
            if meet {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// Builds the arrangement graph and its system, checks the intersection
/// graph against a direct computation, and lifts the generic base of the
/// arrangement graph. `delta` defaults to the most crossings on a curve.
pub fn run_string(
    a: &CurveArrangement,
    delta: Option<usize>,
    opts: &PipelineOptions,
) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("string", opts);
    let measured = stage("curve crossings", a.max_intersections())?;
    let delta = delta.unwrap_or(measured);
    r.param("curves", a.curves.len());
    r.param("delta", delta);
    r.measure("max_crossings_per_curve", measured);
    let ss = stage("string shortcuts", string_shortcuts(a, delta))?;
    r.measure("repeated_crossings", ss.multiplicity);
    let v = validate_shortcuts(&ss.system);
    r.claim("paths_valid", v.violations.is_empty(), None);
    r.bounded("shortcut_length", v.k_actual, delta + 1);
    r.bounded("shortcut_load", v.d_actual, delta + 1);
    let applied = apply_shortcuts(&ss.system).induced_subgraph(&ss.representatives);
    let oracle = stage("intersection oracle", curve_intersection_graph(a))?;
    r.claim(
        "intersection_graph_oracle",
        applied.same_edges(&oracle),
        None,
    );
    let (p, l, td) = stage("base partition", generic_base(&ss.g0, opts))?;
    let lift = stage(
        "lift",
        lift_with_decomposition_unchecked(&ss.system, &p, &l, &td),
    )?;
    record_lift(&mut r, &lift, opts);
    colour_lift(&mut r, &lift, opts)?;
    r.bounds = Some(bound_report("string", &params(&[("delta", delta)]))?);
    Ok(r)
}

/// Builds the k-nearest-neighbour graph, checks its degree and crossing
/// caps, and, when the drawing is in general position, runs the k-planar
/// pipeline on it with the measured crossing number.
pub fn run_knn(points: &[IPoint], k: usize, opts: &PipelineOptions) -> Result<PipelineReport> {
    let mut r = PipelineReport::new("knn", opts);
    r.param("n", points.len());
    r.param("k", k);
    let g = stage("knn graph", knn_build(points, k))?;
    let stats = knn_crossing_stats(points, &g, k);
    r.bounded("max_degree", stats.max_degree, stats.degree_cap);
    r.bounded(
        "crossings_per_edge",
        stats.max_crossings,
        stats.crossing_cap,
    );
    r.measure("degenerate_pairs", stats.degenerate_pairs);
    if stats.degenerate_pairs == 0 {
        let coords: Vec<(i64, i64)> = points.iter().map(|p| (p.x, p.y)).collect();
        let d = Drawing::from_int_points(&coords, g.edges().collect());
        let res = stage("k-planar lift", kplanar_pipeline(&d, stats.max_crossings))?;
        record_lift(&mut r, &res.lift, opts);
        r.bounded(
            "original_layered_width",
            res.restricted_width,
            res.restricted_cap,
        );
        colour_lift(&mut r, &res.lift, opts)?;
    }
    r.bounds = Some(bound_report("knn", &params(&[("k", k)]))?);
    Ok(r)
}
