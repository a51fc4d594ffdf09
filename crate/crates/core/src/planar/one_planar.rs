//! 1-plane graphs given as planarizations: edge maximalization and the
//! tripod partition with kites.

use std::collections::{HashMap, HashSet};

use super::embedding::{Dart, PlaneGraph};
use super::tripod::{tripod_recursion, KiteInfo, Tripod};
use crate::error::{Error, Result};
use crate::graph::{Graph, HPartition, Layering, TreeDecomposition};

/// Checks that every crossing vertex has four distinct non-crossing
/// neighbours, i.e. every drawn edge is crossed at most once, and that no
/// face is a digon.
fn check_one_plane(g: &PlaneGraph) -> Result<()> {
    g.validate()?;
    for c in g.crossing_vertices() {
        let darts = g.crossing_darts(c).unwrap();
        if let Some(&d) = darts.iter().find(|&&d| g.is_crossing(g.head(d))) {
            return Err(Error::NotOnePlane(format!(
                "crossing vertices {c} and {} are adjacent, so an edge is crossed twice",
                g.head(d)
            )));
        }
        let e: Vec<usize> = darts.iter().map(|&d| g.head(d)).collect();
        if e[0] == e[2] || e[1] == e[3] {
            return Err(Error::NotOnePlane(format!(
                "crossing {c} lies on a closed curve"
            )));
        }
    }
    if g.faces().darts.iter().any(|f| f.len() < 3) {
        return Err(Error::Structure(
            "a face is bounded by two parallel edges only".into(),
        ));
    }
    Ok(())
}

/// Rotation-list editor used to dissolve crossing vertices.
struct Rebuild {
    ends: Vec<[usize; 2]>,
    rot: Vec<Vec<Dart>>,
    dead: Vec<bool>,
}

impl Rebuild {
    fn new(g: &PlaneGraph) -> Self {
        Rebuild {
            ends: (0..g.edge_count()).map(|e| g.ends(e)).collect(),
            rot: g.rotation(),
            dead: vec![false; g.edge_count()],
        }
    }

    fn head(&self, d: Dart) -> usize {
        self.ends[d / 2][1 - d % 2]
    }

    /// Joins the two half-edges leaving a crossing vertex via `da` and `db`
    /// into one edge between their far ends, keeping rotation positions.
    fn merge(&mut self, da: Dart, db: Dart) -> usize {
        let (x, y) = (self.head(da), self.head(db));
        let e = self.ends.len();
        self.ends.push([x, y]);
        self.dead.push(false);
        for (v, old, new) in [(x, da ^ 1, 2 * e), (y, db ^ 1, 2 * e + 1)] {
            let pos = self.rot[v].iter().position(|&d| d == old).unwrap();
            self.rot[v][pos] = new;
        }
        for d in [da, db] {
            self.dead[d / 2] = true;
        }
        e
    }

    fn remove_edge(&mut self, e: usize) {
        self.dead[e] = true;
        for end in 0..2 {
            let v = self.ends[e][end];
            self.rot[v].retain(|&d| d != 2 * e + end);
        }
    }

    /// Drops dead edges and the vertices in `drop_vertex`, renumbering both
    /// in order. Returns the graph plus old->new maps for vertices and edges.
    fn finish(self, drop_vertex: &[bool]) -> (PlaneGraph, Vec<usize>, Vec<usize>) {
        let mut vmap = vec![usize::MAX; self.rot.len()];
        let mut nv = 0;
        for (v, &drop) in drop_vertex.iter().enumerate() {
            if !drop {
                vmap[v] = nv;
                nv += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.ends.len()];
        let mut ends = Vec::new();
        for (e, &[a, b]) in self.ends.iter().enumerate() {
            if !self.dead[e] {
                emap[e] = ends.len();
                ends.push([vmap[a], vmap[b]]);
            }
        }
        let rotation = (0..self.rot.len())
            .filter(|&v| !drop_vertex[v])
            .map(|v| {
                self.rot[v]
                    .iter()
                    .map(|&d| 2 * emap[d / 2] + d % 2)
                    .collect()
            })
            .collect();
        (
            PlaneGraph::from_rotation(nv, ends, rotation).unwrap(),
            vmap,
            emap,
        )
    }
}

/// Makes a 1-plane planarization edge-maximal: crossings between edges with
/// a common endpoint are removed by re-pairing the half-edges at the
/// crossing, every crossing is completed to a kite, and all remaining faces
/// are triangulated. The result has only triangular faces.
pub fn edge_maximalize_1plane(g: &PlaneGraph) -> Result<PlaneGraph> {
    check_one_plane(g)?;

    // Uncross crossings whose two edges share an endpoint.
    let mut rb = Rebuild::new(g);
    let mut drop = vec![false; g.vertex_count()];
    for c in g.crossing_vertices() {
        let d = g.crossing_darts(c).unwrap();
        let e: Vec<usize> = d.iter().map(|&x| g.head(x)).collect();
        if let Some(i) = (0..4).find(|&i| e[i] == e[(i + 1) % 4]) {
            rb.merge(d[i], d[(i + 3) % 4]);
            rb.merge(d[(i + 1) % 4], d[(i + 2) % 4]);
            rb.rot[c].clear();
            drop[c] = true;
        }
    }
    let (mut t, vmap, _) = rb.finish(&drop);
    for c in g.crossing_vertices() {
        if !drop[c] {
            t.set_crossing(vmap[c], true);
        }
    }
    t.validate()?;

    // Complete kites: each corner at a crossing gets a triangular face.
    for c in t.crossing_vertices() {
        for i in 0..4 {
            let d = t.crossing_darts(c).unwrap();
            let (di, dj) = (d[i], d[(i + 1) % 4]);
            let walk = t.face_walk(di);
            if walk.len() > 3 {
                let x = t.face_next(di);
                t.insert_edge_in_face(x, dj ^ 1);
            }
        }
    }

    // Triangulate the remaining faces, avoiding pairs already adjacent in
    // the 1-plane graph where possible.
    let mut adjacent: HashSet<(usize, usize)> = HashSet::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for e in 0..t.edge_count() {
        let [a, b] = t.ends(e);
        if !t.is_crossing(a) && !t.is_crossing(b) {
            adjacent.insert(key(a, b));
        }
    }
    for c in t.crossing_vertices() {
        let d = t.crossing_darts(c).unwrap();
        adjacent.insert(key(t.head(d[0]), t.head(d[2])));
        adjacent.insert(key(t.head(d[1]), t.head(d[3])));
    }
    let mut work: Vec<Dart> = t.faces().darts.iter().map(|f| f[0]).collect();
    while let Some(d0) = work.pop() {
        let walk = t.face_walk(d0);
        let len = walk.len();
        if len <= 3 {
            continue;
        }
        let verts: Vec<usize> = walk.iter().map(|&d| t.tail(d)).collect();
        if verts.iter().any(|&v| t.is_crossing(v)) {
            return Err(Error::Structure(
                "kite completion left a long face at a crossing".into(),
            ));
        }
        let on_face: HashSet<(usize, usize)> =
            walk.iter().map(|&d| key(t.tail(d), t.head(d))).collect();
        let mut corners: Vec<usize> = (0..len).collect();
        corners.sort_by_key(|&i| (verts[i], i));
        let pick = |strict: bool| {
            corners.iter().copied().find(|&i| {
                let (a, b) = (verts[i], verts[(i + 2) % len]);
                a != b
                    && if strict {
                        !adjacent.contains(&key(a, b))
                    } else {
                        !on_face.contains(&key(a, b))
                    }
            })
        };
        let i = pick(true).or_else(|| pick(false)).ok_or_else(|| {
            Error::Structure(format!("no chord available in a face of length {len}"))
        })?;
        let (a, b) = (verts[i], verts[(i + 2) % len]);
        let e = t.insert_edge_in_face(walk[i], walk[(i + 2) % len]);
        adjacent.insert(key(a, b));
        work.push(2 * e);
        work.push(2 * e + 1);
    }
    t.validate()?;
    let faces = t.faces();
    let outer = faces
        .darts
        .iter()
        .find(|f| f.iter().all(|&d| !t.is_crossing(t.tail(d))))
        .map(|f| f[0])
        .ok_or_else(|| Error::Structure("no face avoids every crossing".into()))?;
    t.set_outer_dart(Some(outer));
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct OnePlanarPartition {
    /// The 1-plane graph on the non-crossing vertices: uncrossed edges plus
    /// both spars of every crossing.
    pub graph: Graph,
    /// The triangulation obtained by removing one spar from every kite.
    pub spar_removed: PlaneGraph,
    pub partition: HPartition,
    pub decomposition: TreeDecomposition,
    /// BFS distance in `spar_removed` from the outer face.
    pub levels: Layering,
    /// Consecutive levels paired after adding a root below the outer face:
    /// layer `i` holds levels `2i - 1` and `2i`.
    pub layering: Layering,
    pub tripods: Vec<Tripod>,
}

/// Tripod partition of an edge-maximal 1-plane planarization whose
/// non-crossing vertices are numbered before its crossing vertices.
pub fn one_planar_partition(g: &PlaneGraph) -> Result<OnePlanarPartition> {
    check_one_plane(g)?;
    if !g.is_triangulation() {
        return Err(Error::Structure(
            "input is not edge-maximal: some face is not a triangle".into(),
        ));
    }
    let real = (0..g.vertex_count()).filter(|&v| !g.is_crossing(v)).count();
    if (0..real).any(|v| g.is_crossing(v)) {
        return Err(Error::Malformed(
            "crossing vertices must be numbered after all others".into(),
        ));
    }

    let mut graph = Graph::new(real);
    for e in 0..g.edge_count() {
        let [a, b] = g.ends(e);
        if a < real && b < real {
            graph.add_edge(a, b);
        }
    }

    let mut rb = Rebuild::new(g);
    let mut kept: Vec<(usize, [usize; 2], [usize; 4])> = Vec::new();
    for c in g.crossing_vertices() {
        let d = g.crossing_darts(c).unwrap();
        let e: Vec<usize> = d.iter().map(|&x| g.head(x)).collect();
        graph.add_edge(e[0], e[2]);
        graph.add_edge(e[1], e[3]);
        let mut sails = [0; 4];
        for i in 0..4 {
            let walk = g.face_walk(d[i]);
            if walk.len() != 3 {
                return Err(Error::Structure(format!(
                    "crossing {c} is not completed to a kite"
                )));
            }
            sails[i] = walk[1] / 2;
        }
        let a = (e[0].min(e[2]), e[0].max(e[2]));
        let b = (e[1].min(e[3]), e[1].max(e[3]));
        let (keep, remove) = if a <= b { (0, 1) } else { (1, 0) };
        rb.remove_edge(d[remove] / 2);
        rb.remove_edge(d[remove + 2] / 2);
        let merged = rb.merge(d[keep], d[keep + 2]);
        kept.push((merged, [e[remove], e[remove + 2]], sails));
    }
    let drop: Vec<bool> = (0..g.vertex_count()).map(|v| v >= real).collect();
    let (mut tri, _, emap) = rb.finish(&drop);
    let kites: HashMap<usize, KiteInfo> = kept
        .into_iter()
        .map(|(e, others, sails)| {
            (
                emap[e],
                KiteInfo {
                    others,
                    sails: sails.map(|s| emap[s]),
                },
            )
        })
        .collect();
    let outer_real = g
        .outer_dart()
        .filter(|&d| g.tail(d) < real && g.head(d) < real)
        .or_else(|| {
            g.faces()
                .darts
                .into_iter()
                .find(|f| f.iter().all(|&d| g.tail(d) < real))
                .map(|f| f[0])
        })
        .ok_or_else(|| Error::Structure("no face avoids every crossing".into()))?;
    let outer = 2 * emap[outer_real / 2] + outer_real % 2;
    tri.set_outer_dart(Some(outer));

    let tp = tripod_recursion(&tri, outer, &kites, 15)?;
    let layering =
        Layering::from_layer_of(tp.levels.as_slice().iter().map(|&l| (l + 1) / 2).collect());
    Ok(OnePlanarPartition {
        graph,
        spar_removed: tri,
        partition: tp.partition,
        decomposition: tp.decomposition,
        levels: tp.levels,
        layering,
        tripods: tp.tripods,
    })
}
