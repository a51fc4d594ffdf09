use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::embedding::PlaneGraph;
use crate::error::{Error, Result};
use crate::geom::{self, Contact, IPoint, RationalInput};
use crate::graph::Graph;
use crate::shortcut::ShortcutSystem;

/// A straight-line drawing: rational points and segments between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "DrawingJson", try_from = "DrawingJson")]
pub struct Drawing {
    pub points: Vec<(BigRational, BigRational)>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    points: Vec<[RationalInput; 2]>,
    edges: Vec<[usize; 2]>,
}

impl From<Drawing> for DrawingJson {
    fn from(d: Drawing) -> Self {
        DrawingJson {
            points: d
                .points
                .iter()
                .map(|(x, y)| {
                    [
                        RationalInput::from_rational(x),
                        RationalInput::from_rational(y),
                    ]
                })
                .collect(),
            edges: d.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<DrawingJson> for Drawing {
    type Error = Error;

    fn try_from(j: DrawingJson) -> Result<Self> {
        let points = j
            .points
            .iter()
            .map(|[x, y]| Ok((x.to_rational()?, y.to_rational()?)))
            .collect::<Result<Vec<_>>>()?;
        let n = points.len();
        if let Some([a, b]) = j.edges.iter().find(|[a, b]| *a >= n || *b >= n) {
            return Err(Error::Malformed(format!(
                "edge ({a}, {b}) refers to a missing point"
            )));
        }
        Ok(Drawing {
            points,
            edges: j.edges.iter().map(|&[a, b]| (a, b)).collect(),
        })
    }
}

impl Drawing {
    pub fn from_int_points(points: &[(i64, i64)], edges: Vec<(usize, usize)>) -> Self {
        Drawing {
            points: points
                .iter()
                .map(|&(x, y)| {
                    (
                        BigRational::from_integer(BigInt::from(x)),
                        BigRational::from_integer(BigInt::from(y)),
                    )
                })
                .collect(),
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.points.len(), self.edges.iter().copied())
    }

    pub fn int_points(&self) -> Result<Vec<IPoint>> {
        geom::to_integer_points(&self.points)
    }
}

/// Result of replacing every crossing of a drawing by a dummy vertex.
#[derive(Clone, Debug)]
pub struct Planarization {
    /// Vertices `0..original_count` are the drawing's points; the rest are
    /// crossing vertices.
    pub plane: PlaneGraph,
    /// One path per drawing edge (in drawing order) through its crossings,
    /// over the plane graph's underlying simple graph.
    pub shortcuts: ShortcutSystem,
    pub original_count: usize,
    pub crossings_per_edge: Vec<usize>,
}

impl Planarization {
    pub fn crossing_count(&self) -> usize {
        self.plane.vertex_count() - self.original_count
    }

    pub fn max_crossings_per_edge(&self) -> usize {
        self.crossings_per_edge.iter().copied().max().unwrap_or(0)
    }
}

/// Planarizes a straight-line drawing in general position. Fails with a
/// geometry error on coincident points, a point in the interior of a
/// segment, touching or overlapping segments, or three segments through a
/// common point. If `max_crossings` is given, every edge must be crossed at
/// most that many times.
pub fn planarize(drawing: &Drawing, max_crossings: Option<usize>) -> Result<Planarization> {
    let pts = drawing.int_points()?;
    let n = pts.len();
    let m = drawing.edges.len();
    let mut sorted = pts.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Geometry("two vertices share a position".into()));
    }
    let mut seen_edges = std::collections::HashSet::new();
    for (i, &(a, b)) in drawing.edges.iter().enumerate() {
        if a == b {
            return Err(Error::Geometry(format!("edge {i} is a loop")));
        }
        if !seen_edges.insert((a.min(b), a.max(b))) {
            return Err(Error::Geometry(format!(
                "edge {i} duplicates an earlier edge"
            )));
        }
        for (v, &p) in pts.iter().enumerate() {
            if v != a && v != b && geom::on_segment(p, pts[a], pts[b]) {
                return Err(Error::Geometry(format!("vertex {v} lies on edge {i}")));
            }
        }
    }

    // Crossings as (edge i, edge j, position along i, position along j).
    let mut crossings: Vec<(usize, usize, BigRational, BigRational)> = Vec::new();
    for i in 0..m {
        let (a, b) = drawing.edges[i];
        for j in i + 1..m {
            let (c, d) = drawing.edges[j];
            let shared = [c, d].iter().filter(|&&x| x == a || x == b).count();
            if shared > 0 {
                let p = if a == c || a == d { a } else { b };
                let q = if p == a { b } else { a };
                let r = if p == c { d } else { c };
                let (u, w) = (pts[q].sub(pts[p]), pts[r].sub(pts[p]));
                if u.0 * w.1 - u.1 * w.0 == 0 && u.0 * w.0 + u.1 * w.1 > 0 {
                    return Err(Error::Geometry(format!("edges {i} and {j} overlap")));
                }
                continue;
            }
            match geom::segment_contact(pts[a], pts[b], pts[c], pts[d]) {
                Contact::Disjoint => {}
                Contact::Degenerate => {
                    return Err(Error::Geometry(format!(
                        "edges {i} and {j} touch without crossing"
                    )))
                }
                Contact::Proper => {
                    let t = geom::crossing_param(pts[a], pts[b], pts[c], pts[d]);
                    let s = geom::crossing_param(pts[c], pts[d], pts[a], pts[b]);
                    crossings.push((i, j, t, s));
                }
            }
        }
    }
    let mut points: Vec<((BigRational, BigRational), usize)> = crossings
        .iter()
        .enumerate()
        .map(|(ci, &(i, _, _, _))| {
            let (a, b) = drawing.edges[i];
            let (c, d) = drawing.edges[crossings[ci].1];
            (geom::crossing_point(pts[a], pts[b], pts[c], pts[d]), ci)
        })
        .collect();
    points.sort();
    if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
        let (i, j) = (crossings[w[0].1].0, crossings[w[0].1].1);
        let k = crossings[w[1].1].0.max(crossings[w[1].1].1);
        return Err(Error::Geometry(format!(
            "three or more segments meet at one point (edges {i}, {j}, {k})"
        )));
    }

    let mut on_edge: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); m];
    for (ci, (i, j, t, s)) in crossings.iter().enumerate() {
        on_edge[*i].push((t.clone(), n + ci));
        on_edge[*j].push((s.clone(), n + ci));
    }
    let crossings_per_edge: Vec<usize> = on_edge.iter().map(Vec::len).collect();
    if let Some(k) = max_crossings {
        if let Some(i) = crossings_per_edge.iter().position(|&c| c > k) {
            return Err(Error::Geometry(format!(
                "edge {i} is crossed {} times, more than the declared {k}",
                crossings_per_edge[i]
            )));
        }
    }

    let total = n + crossings.len();
    let mut ends = Vec::new();
    let mut dir: Vec<(i128, i128)> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut paths = Vec::with_capacity(m);
    for (i, &(a, b)) in drawing.edges.iter().enumerate() {
        on_edge[i].sort();
        let mut chain = vec![a];
        chain.extend(on_edge[i].iter().map(|&(_, v)| v));
        chain.push(b);
        let forward = pts[b].sub(pts[a]);
        for w in chain.windows(2) {
            let e = ends.len();
            ends.push([w[0], w[1]]);
            dir.push(forward);
            dir.push((-forward.0, -forward.1));
            out[w[0]].push(2 * e);
            out[w[1]].push(2 * e + 1);
        }
        paths.push(chain);
    }
    for darts in &mut out {
        darts.sort_by(|&x, &y| geom::direction_cmp(dir[x], dir[y]));
    }
    let mut plane = PlaneGraph::from_rotation(total, ends, out)?;
    for v in n..total {
        plane.set_crossing(v, true);
    }
    plane.validate()?;
    let base = plane.underlying_graph();
    let k = crossings_per_edge.iter().copied().max().unwrap_or(0) + 1;
    Ok(Planarization {
        shortcuts: ShortcutSystem::new(base, paths, max_crossings.map_or(k, |c| c + 1), 2),
        plane,
        original_count: n,
        crossings_per_edge,
    })
}
