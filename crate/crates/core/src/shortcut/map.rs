use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ShortcutSystem;
use crate::error::{malformed, Error, Result};
use crate::graph::Graph;
use crate::planar::{Dart, PlaneGraph};

pub const NATION_LABEL: &str = "nation";
pub const LAKE_LABEL: &str = "lake";

/// A plane graph whose faces are labelled nation or lake. Face ids follow
/// [`PlaneGraph::faces`]: faces are numbered in order of their lowest dart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MapJson", try_from = "MapJson")]
pub struct MapInstance {
    pub graph: PlaneGraph,
    nation: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    graph: PlaneGraph,
    /// Face id to `"nation"` or `"lake"`; unlisted faces are lakes.
    faces: BTreeMap<String, String>,
}

impl From<MapInstance> for MapJson {
    fn from(m: MapInstance) -> Self {
        let faces = m
            .nation
            .iter()
            .enumerate()
            .map(|(f, &n)| {
                (
                    f.to_string(),
                    if n { NATION_LABEL } else { LAKE_LABEL }.to_string(),
                )
            })
            .collect();
        MapJson {
            graph: m.graph,
            faces,
        }
    }
}

impl TryFrom<MapJson> for MapInstance {
    type Error = Error;

    fn try_from(j: MapJson) -> Result<Self> {
        let count = j.graph.faces().len();
        let mut nation = vec![false; count];
        for (k, label) in j.faces {
            let f: usize = k
                .parse()
                .map_err(|_| Error::Malformed(format!("face key `{k}` is not a face id")))?;
            if f >= count {
                return malformed(format!("face {f} out of range ({count} faces)"));
            }
            nation[f] = match label.as_str() {
                NATION_LABEL => true,
                LAKE_LABEL => false,
                other => {
                    return malformed(format!("face label `{other}` is neither nation nor lake"))
                }
            };
        }
        MapInstance::new(j.graph, nation)
    }
}

impl MapInstance {
    pub fn new(graph: PlaneGraph, nation: Vec<bool>) -> Result<Self> {
        graph.validate()?;
        let count = graph.faces().len();
        if nation.len() != count {
            return malformed(format!("{} face labels for {count} faces", nation.len()));
        }
        Ok(MapInstance { graph, nation })
    }

    pub fn is_nation(&self, face: usize) -> bool {
        self.nation[face]
    }

    pub fn nations(&self) -> Vec<usize> {
        (0..self.nation.len()).filter(|&f| self.nation[f]).collect()
    }

    /// Distinct nations incident with each vertex.
    pub fn nations_at(&self) -> Vec<BTreeSet<usize>> {
        let faces = self.graph.faces();
        let mut at = vec![BTreeSet::new(); self.graph.vertex_count()];
        for d in 0..self.graph.dart_count() {
            let f = faces.face_of[d];
            if self.nation[f] {
                at[self.graph.tail(d)].insert(f);
            }
        }
        at
    }

    /// The largest number of nations at a vertex (the `d` of a `d`-map graph).
    pub fn max_nations(&self) -> usize {
        self.nations_at()
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
    }

    /// The map graph by definition: one vertex per nation, in the order of
    /// [`MapInstance::nations`], adjacent when the faces share a vertex.
    pub fn map_graph(&self) -> Graph {
        let nations = self.nations();
        let index: BTreeMap<usize, usize> =
            nations.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut g = Graph::new(nations.len());
        for set in self.nations_at() {
            let v: Vec<usize> = set.iter().map(|f| index[f]).collect();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    g.add_edge(v[i], v[j]);
                }
            }
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct MapShortcuts {
    /// Vertices of the input graph first, then one vertex per nation in
    /// face-id order. Nations are joined to their boundary vertices and to
    /// nations across shared edges.
    pub g1: PlaneGraph,
    pub system: ShortcutSystem,
    /// `g1` vertex of each nation, in the order of [`MapInstance::nations`].
    pub nation_vertices: Vec<usize>,
}

/// `d(d - 3) / 2`, or 0 when that is negative.
pub fn map_load_cap(d: usize) -> usize {
    (d * d.saturating_sub(3)) / 2
}

/// Builds the plane graph of nations and boundary vertices, plus a length-2
/// shortcut `(x, v, y)` for every pair of nations that share a vertex but no
/// edge, routed through their lowest-id common vertex `v`. Only plane
/// instances are supported: `genus` must be 0. The declared parameters are
/// `(2, d(d - 3)/2)` for `d` the largest number of nations at a vertex.
pub fn map_shortcuts(m: &MapInstance, genus: usize) -> Result<MapShortcuts> {
    if genus != 0 {
        return Err(Error::Malformed(format!(
            "map instances on surfaces of genus {genus} are not supported; only plane maps"
        )));
    }
    let g0 = &m.graph;
    let n0 = g0.vertex_count();
    let faces = g0.faces();
    let nations = m.nations();
    let mut vertex_of_face = vec![usize::MAX; faces.len()];
    for (i, &f) in nations.iter().enumerate() {
        vertex_of_face[f] = n0 + i;
    }

    // One edge per nation corner (keyed by the dart that leaves the corner
    // along the face) and one per edge between two different nations.
    let mut ends: Vec<[usize; 2]> = Vec::new();
    let mut corner_edge = vec![usize::MAX; g0.dart_count()];
    let mut across_edge = vec![usize::MAX; g0.edge_count()];
    for d in 0..g0.dart_count() {
        let f = faces.face_of[d];
        if m.nation[f] {
            corner_edge[d] = ends.len();
            ends.push([g0.tail(d), vertex_of_face[f]]);
        }
    }
    for e in 0..g0.edge_count() {
        let (f, g) = (faces.face_of[2 * e], faces.face_of[2 * e + 1]);
        if m.nation[f] && m.nation[g] && f != g {
            across_edge[e] = ends.len();
            ends.push([vertex_of_face[f], vertex_of_face[g]]);
        }
    }

    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n0 + nations.len()];
    for (x, rot) in rotation.iter_mut().enumerate().take(n0) {
        for d in g0.darts_around(x) {
            if corner_edge[d] != usize::MAX {
                rot.push(2 * corner_edge[d]);
            }
        }
    }
    for &f in &nations {
        let rot = &mut rotation[vertex_of_face[f]];
        for &d in &faces.darts[f] {
            rot.push(2 * corner_edge[d] + 1);
            let a = across_edge[d / 2];
            if a != usize::MAX {
                // The across edge runs from the face of dart 2e to the face
                // of dart 2e + 1.
                rot.push(2 * a + d % 2);
            }
        }
    }
    let multi = PlaneGraph::from_rotation(n0 + nations.len(), ends, rotation)?;
    let mut g1 = multi.simplify();
    for (i, _) in nations.iter().enumerate() {
        g1.set_label(n0 + i, NATION_LABEL);
    }
    g1.validate()?;
    let base = g1.underlying_graph();

    let nations_at = m.nations_at();
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, set) in nations_at.iter().enumerate() {
        let v: Vec<usize> = set.iter().map(|&f| vertex_of_face[f]).collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                shared.entry((v[i].min(v[j]), v[i].max(v[j]))).or_insert(x);
            }
        }
    }
    let paths = shared
        .into_iter()
        .filter(|&((a, b), _)| !base.has_edge(a, b))
        .map(|((a, b), x)| vec![a, x, b])
        .collect();
    let d = nations_at.iter().map(BTreeSet::len).max().unwrap_or(0);
    Ok(MapShortcuts {
        g1,
        system: ShortcutSystem::new(base, paths, 2, map_load_cap(d)),
        nation_vertices: (0..nations.len()).map(|i| n0 + i).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortcut::{apply_shortcuts, validate_shortcuts};

    fn triangle() -> PlaneGraph {
        let mut g = PlaneGraph::new(3);
        let e0 = g.insert_edge(0, None, 1, None);
        let e1 = g.insert_edge(1, Some(2 * e0 + 1), 2, None);
        g.insert_edge(2, Some(2 * e1 + 1), 0, Some(2 * e0));
        g
    }

    /// Two triangles 0,1,2 and 0,3,4 sharing vertex 0.
    fn bowtie() -> PlaneGraph {
        let mut g = triangle();
        g.add_vertex();
        g.add_vertex();
        let a = g.insert_edge(0, Some(0), 3, None);
        let b = g.insert_edge(3, Some(2 * a + 1), 4, None);
        g.insert_edge(4, Some(2 * b + 1), 0, Some(2 * a));
        g
    }

    #[test]
    fn single_nation_triangle() {
        let g = triangle();
        let faces = g.faces();
        let mut nation = vec![false; faces.len()];
        nation[faces.face_of[0]] = true;
        let m = MapInstance::new(g, nation).unwrap();
        let s = map_shortcuts(&m, 0).unwrap();
        assert!(s.system.paths.is_empty());
        assert_eq!(m.map_graph().vertex_count(), 1);
        assert_eq!(s.g1.vertex_count(), 4);
        assert_eq!(s.g1.edge_count(), 3);
    }

    #[test]
    fn bowtie_has_one_shortcut_through_the_shared_vertex() {
        let g = bowtie();
        let faces = g.faces();
        assert_eq!(faces.len(), 3);
        let nation: Vec<bool> = faces.darts.iter().map(|f| f.len() == 3).collect();
        let m = MapInstance::new(g, nation).unwrap();
        assert_eq!(m.nations().len(), 2);
        let s = map_shortcuts(&m, 0).unwrap();
        assert_eq!(s.system.paths, vec![vec![5, 0, 6]]);
        let v = validate_shortcuts(&s.system);
        assert_eq!((v.k_actual, v.d_actual), (2, 1));
        // d = 2 here, so the declared load cap is 0 and the instance exceeds it.
        assert_eq!(m.max_nations(), 2);
        assert_eq!(s.system.declared_d, 0);
        let applied = apply_shortcuts(&s.system).induced_subgraph(&s.nation_vertices);
        assert!(applied.same_edges(&m.map_graph()));
        assert!(map_shortcuts(&m, 1).is_err());
    }

    #[test]
    fn all_faces_nations_gives_edge_adjacency() {
        let g = triangle();
        let m = MapInstance::new(g, vec![true, true]).unwrap();
        let s = map_shortcuts(&m, 0).unwrap();
        assert!(s.system.paths.is_empty());
        assert!(s.g1.underlying_graph().has_edge(3, 4));
        assert_eq!(s.g1.underlying_graph().edge_count(), 7);
    }

    #[test]
    fn json_round_trip() {
        let m = MapInstance::new(bowtie(), vec![true, false, true]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: MapInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
