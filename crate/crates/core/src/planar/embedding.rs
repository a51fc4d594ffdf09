use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::graph::Graph;

/// A half-edge. Edge `e` owns darts `2e` (from `ends[e][0]`) and `2e + 1`
/// (from `ends[e][1]`).
pub type Dart = usize;

pub const CROSSING_LABEL: &str = "crossing";

/// A connected or disconnected multigraph embedded in the sphere, given by a
/// rotation system: the counter-clockwise cyclic order of darts leaving each
/// vertex.
///
/// Faces are traced with `face_next(d) = rot_prev(twin(d))`, which keeps the
/// face on the left of each dart. Crossing vertices of a planarization are
/// marked; they have degree four and their opposite darts belong to the same
/// original edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PlaneJson", try_from = "PlaneJson")]
pub struct PlaneGraph {
    ends: Vec<[usize; 2]>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    first: Vec<Option<Dart>>,
    crossing: Vec<bool>,
    labels: BTreeMap<usize, String>,
    outer: Option<Dart>,
}

#[derive(Serialize, Deserialize)]
struct PlaneJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    /// Per vertex, the counter-clockwise list of `[edge, end]` pairs.
    rotation: Vec<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer: Option<[usize; 2]>,
}

impl From<PlaneGraph> for PlaneJson {
    fn from(g: PlaneGraph) -> Self {
        let mut labels: BTreeMap<String, String> = g
            .labels
            .iter()
            .map(|(v, l)| (v.to_string(), l.clone()))
            .collect();
        for v in 0..g.vertex_count() {
            if g.crossing[v] {
                labels.insert(v.to_string(), CROSSING_LABEL.to_string());
            }
        }
        PlaneJson {
            n: g.vertex_count(),
            edges: g.ends.clone(),
            rotation: (0..g.vertex_count())
                .map(|v| {
                    g.darts_around(v)
                        .into_iter()
                        .map(|d| [d / 2, d % 2])
                        .collect()
                })
                .collect(),
            labels,
            outer: g.outer.map(|d| [d / 2, d % 2]),
        }
    }
}

impl TryFrom<PlaneJson> for PlaneGraph {
    type Error = Error;

    fn try_from(j: PlaneJson) -> Result<Self> {
        let rotation = j
            .rotation
            .iter()
            .map(|r| r.iter().map(|&[e, end]| 2 * e + end).collect())
            .collect();
        let mut g = PlaneGraph::from_rotation(j.n, j.edges, rotation)?;
        for (k, l) in j.labels {
            let v: usize = k
                .parse()
                .map_err(|_| Error::Malformed(format!("label key `{k}` is not a vertex")))?;
            if v >= j.n {
                return malformed(format!("label for vertex {v} out of range"));
            }
            if l == CROSSING_LABEL {
                g.crossing[v] = true;
            } else {
                g.labels.insert(v, l);
            }
        }
        if let Some([e, end]) = j.outer {
            if e >= g.edge_count() || end > 1 {
                return malformed("outer dart out of range");
            }
            g.outer = Some(2 * e + end);
        }
        g.validate()?;
        Ok(g)
    }
}

/// Faces of an embedding, each as its cyclic dart sequence.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Faces ordered by their smallest dart; each starts at that dart.
    pub darts: Vec<Vec<Dart>>,
    pub face_of: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

impl PlaneGraph {
    pub fn new(n: usize) -> Self {
        PlaneGraph {
            ends: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            first: vec![None; n],
            crossing: vec![false; n],
            labels: BTreeMap::new(),
            outer: None,
        }
    }

    /// Builds an embedding from per-vertex counter-clockwise dart lists.
    /// Every dart must appear exactly once, at its tail.
    pub fn from_rotation(
        n: usize,
        ends: Vec<[usize; 2]>,
        rotation: Vec<Vec<Dart>>,
    ) -> Result<Self> {
        if rotation.len() != n {
            return malformed(format!(
                "rotation lists {} vertices, expected {n}",
                rotation.len()
            ));
        }
        for (e, &[a, b]) in ends.iter().enumerate() {
            if a >= n || b >= n {
                return malformed(format!("edge {e} has an endpoint outside 0..{n}"));
            }
            if a == b {
                return malformed(format!("edge {e} is a loop"));
            }
        }
        let darts = 2 * ends.len();
        let mut g = PlaneGraph {
            next: vec![usize::MAX; darts],
            prev: vec![usize::MAX; darts],
            first: vec![None; n],
            crossing: vec![false; n],
            labels: BTreeMap::new(),
            outer: None,
            ends,
        };
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= darts || g.tail(d) != v || g.next[d] != usize::MAX {
                    return malformed(format!(
                        "dart {d} is misplaced in the rotation of vertex {v}"
                    ));
                }
                let nxt = rot[(i + 1) % rot.len()];
                g.next[d] = nxt;
                g.prev[nxt] = d;
            }
            g.first[v] = rot.first().copied();
        }
        if let Some(d) = g.next.iter().position(|&x| x == usize::MAX) {
            return malformed(format!("dart {d} is missing from the rotation system"));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.first.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.first.push(None);
        self.crossing.push(false);
        self.first.len() - 1
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.ends[d / 2][d % 2]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.ends[d / 2][1 - d % 2]
    }

    pub fn twin(d: Dart) -> Dart {
        d ^ 1
    }

    pub fn edge_of(d: Dart) -> usize {
        d / 2
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// The dart following `d` on the face to its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[d ^ 1]
    }

    pub fn first_dart(&self, v: usize) -> Option<Dart> {
        self.first[v]
    }

    /// Darts leaving `v` in counter-clockwise order.
    pub fn darts_around(&self, v: usize) -> Vec<Dart> {
        let mut out = Vec::new();
        if let Some(start) = self.first[v] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next[d];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_around(v).len()
    }

    pub fn rotation(&self) -> Vec<Vec<Dart>> {
        (0..self.vertex_count())
            .map(|v| self.darts_around(v))
            .collect()
    }

    /// Adds edge `uv` with the new dart at `u` placed immediately after
    /// `after_u` in counter-clockwise order (and likewise at `v`). `None` is
    /// only allowed for a vertex without darts.
    pub fn insert_edge(
        &mut self,
        u: usize,
        after_u: Option<Dart>,
        v: usize,
        after_v: Option<Dart>,
    ) -> usize {
        assert_ne!(u, v, "loops are not allowed");
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.next.extend([usize::MAX; 2]);
        self.prev.extend([usize::MAX; 2]);
        self.splice(2 * e, u, after_u);
        self.splice(2 * e + 1, v, after_v);
        e
    }

    fn splice(&mut self, d: Dart, v: usize, after: Option<Dart>) {
        match after {
            None => {
                assert!(
                    self.first[v].is_none(),
                    "position required at a vertex with darts"
                );
                self.next[d] = d;
                self.prev[d] = d;
                self.first[v] = Some(d);
            }
            Some(a) => {
                assert_eq!(self.tail(a), v, "position dart does not leave the vertex");
                let b = self.next[a];
                self.next[a] = d;
                self.prev[d] = a;
                self.next[d] = b;
                self.prev[b] = d;
            }
        }
    }

    /// Adds a chord between the corners of the face that `du` and `dv` both
    /// lie on, where `du` leaves `u` and `dv` leaves `v` along that face. The
    /// face splits into one containing `du` and one containing `dv`.
    pub fn insert_edge_in_face(&mut self, du: Dart, dv: Dart) -> usize {
        let (u, v) = (self.tail(du), self.tail(dv));
        self.insert_edge(u, Some(du), v, Some(dv))
    }

    fn unlink(&mut self, d: Dart) {
        let v = self.tail(d);
        let (p, n) = (self.prev[d], self.next[d]);
        if n == d {
            self.first[v] = None;
        } else {
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[v] == Some(d) {
                self.first[v] = Some(n);
            }
        }
    }

    /// Replaces edge `e`, the diagonal of the quadrilateral formed by its
    /// two triangular faces, with the other diagonal. Returns `false` (and
    /// leaves the graph unchanged) if either face is not a triangle or the
    /// other diagonal would be a loop or parallel to an existing edge.
    pub fn flip_edge(&mut self, e: usize) -> bool {
        let (d, t) = (2 * e, 2 * e + 1);
        let f1 = self.face_walk(d);
        let f2 = self.face_walk(t);
        if f1.len() != 3 || f2.len() != 3 {
            return false;
        }
        let (c, x) = (self.head(f1[1]), self.head(f2[1]));
        if c == x || self.darts_around(c).iter().any(|&y| self.head(y) == x) {
            return false;
        }
        if self.outer.is_some_and(|o| o / 2 == e) {
            self.outer = Some(f1[1]);
        }
        self.unlink(d);
        self.unlink(t);
        self.ends[e] = [c, x];
        // Corners: at c the face continues with f1[2] (c -> a), at x with
        // f2[2] (x -> b).
        self.splice(d, c, Some(f1[2]));
        self.splice(t, x, Some(f2[2]));
        true
    }

    /// The face walk starting at dart `d`.
    pub fn face_walk(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    pub fn faces(&self) -> Faces {
        let mut face_of = vec![usize::MAX; self.dart_count()];
        let mut darts = Vec::new();
        for d in 0..self.dart_count() {
            if face_of[d] != usize::MAX {
                continue;
            }
            let walk = self.face_walk(d);
            for &x in &walk {
                face_of[x] = darts.len();
            }
            darts.push(walk);
        }
        Faces { darts, face_of }
    }

    pub fn is_crossing(&self, v: usize) -> bool {
        self.crossing[v]
    }

    pub fn set_crossing(&mut self, v: usize, flag: bool) {
        self.crossing[v] = flag;
    }

    pub fn crossing_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.crossing[v])
            .collect()
    }

    /// For a crossing vertex, its four darts in rotation order; positions 0/2
    /// and 1/3 belong to the same original edge.
    pub fn crossing_darts(&self, v: usize) -> Option<[Dart; 4]> {
        if !self.crossing[v] {
            return None;
        }
        self.darts_around(v).try_into().ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn set_outer_dart(&mut self, d: Option<Dart>) {
        self.outer = d;
    }

    /// Simple graph on the same vertices (parallel edges merged).
    pub fn underlying_graph(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        for &[a, b] in &self.ends {
            g.add_edge(a, b);
        }
        for (&v, l) in &self.labels {
            g.set_label(v, l.clone());
        }
        for v in self.crossing_vertices() {
            g.set_label(v, CROSSING_LABEL);
        }
        g
    }

    /// Connected components of the vertex set, each sorted.
    pub fn vertex_components(&self) -> Vec<Vec<usize>> {
        let mut g = Graph::new(self.vertex_count());
        for &[a, b] in &self.ends {
            g.add_edge(a, b);
        }
        g.components()
    }

    /// Checks rotation consistency, the crossing-vertex degree, and that each
    /// component is embedded with genus zero (`V − E + F = 2`).
    pub fn validate(&self) -> Result<()> {
        for d in 0..self.dart_count() {
            if self.prev[self.next[d]] != d || self.tail(self.next[d]) != self.tail(d) {
                return Err(Error::Embedding(format!(
                    "rotation links broken at dart {d}"
                )));
            }
        }
        for v in self.crossing_vertices() {
            if self.degree(v) != 4 {
                return Err(Error::Embedding(format!(
                    "crossing vertex {v} has degree {}",
                    self.degree(v)
                )));
            }
        }
        let faces = self.faces();
        for comp in self.vertex_components() {
            let mut edges = 0;
            let mut darts = Vec::new();
            for &v in &comp {
                let around = self.darts_around(v);
                edges += around.len();
                darts.extend(around);
            }
            if darts.is_empty() {
                continue;
            }
            let mut fs: Vec<usize> = darts.iter().map(|&d| faces.face_of[d]).collect();
            fs.sort_unstable();
            fs.dedup();
            let euler = comp.len() as i64 - (edges / 2) as i64 + fs.len() as i64;
            if euler != 2 {
                return Err(Error::Embedding(format!(
                    "component containing vertex {} has Euler characteristic {euler}, not 2",
                    comp[0]
                )));
            }
        }
        Ok(())
    }

    /// Keeps the edges with `keep[e]` set; rotations keep their relative
    /// order. Returns the new graph and the old id of each new edge.
    pub fn retain_edges(&self, keep: &[bool]) -> (PlaneGraph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.edge_count()];
        let mut old_id = Vec::new();
        let mut ends = Vec::new();
        for e in 0..self.edge_count() {
            if keep[e] {
                new_id[e] = old_id.len();
                old_id.push(e);
                ends.push(self.ends[e]);
            }
        }
        let rotation = (0..self.vertex_count())
            .map(|v| {
                self.darts_around(v)
                    .into_iter()
                    .filter(|&d| keep[d / 2])
                    .map(|d| 2 * new_id[d / 2] + d % 2)
                    .collect()
            })
            .collect();
        let mut g = PlaneGraph::from_rotation(self.vertex_count(), ends, rotation).unwrap();
        g.crossing = self.crossing.clone();
        g.labels = self.labels.clone();
        g.outer = self
            .outer
            .filter(|&d| keep[d / 2])
            .map(|d| 2 * new_id[d / 2] + d % 2);
        (g, old_id)
    }

    /// Removes parallel copies of edges, keeping the lowest-id copy.
    pub fn simplify(&self) -> PlaneGraph {
        let mut seen = std::collections::HashSet::new();
        let keep: Vec<bool> = self
            .ends
            .iter()
            .map(|&[a, b]| seen.insert((a.min(b), a.max(b))))
            .collect();
        self.retain_edges(&keep).0
    }

    /// Subgraph induced by `vertices` (sorted or not); vertex `i` of the
    /// result is `vertices[i]`. Returns the graph and the old id of each
    /// new edge.
    pub fn induced(&self, vertices: &[usize]) -> (PlaneGraph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut new_id = vec![usize::MAX; self.edge_count()];
        let mut old_id = Vec::new();
        let mut ends = Vec::new();
        for (e, &[a, b]) in self.ends.iter().enumerate() {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                new_id[e] = old_id.len();
                old_id.push(e);
                ends.push([index[a], index[b]]);
            }
        }
        let rotation = vertices
            .iter()
            .map(|&v| {
                self.darts_around(v)
                    .into_iter()
                    .filter(|&d| new_id[d / 2] != usize::MAX)
                    .map(|d| 2 * new_id[d / 2] + d % 2)
                    .collect()
            })
            .collect();
        let mut g = PlaneGraph::from_rotation(vertices.len(), ends, rotation).unwrap();
        for (i, &v) in vertices.iter().enumerate() {
            g.crossing[i] = self.crossing[v];
            if let Some(l) = self.labels.get(&v) {
                g.labels.insert(i, l.clone());
            }
        }
        g.outer = self
            .outer
            .filter(|&d| new_id[d / 2] != usize::MAX)
            .map(|d| 2 * new_id[d / 2] + d % 2);
        (g, old_id)
    }

    /// True if every face has exactly three darts.
    pub fn is_triangulation(&self) -> bool {
        self.dart_count() > 0 && self.faces().darts.iter().all(|f| f.len() == 3)
    }
}
