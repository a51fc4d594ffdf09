use super::embedding::{Dart, PlaneGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, Layering};

/// Adds chords until every face is a triangle, keeping the graph simple.
///
/// Each face longer than three is cut by a chord between the vertices two
/// steps apart on the face walk, trying corners in order of vertex id, so a
/// face is fanned from its lowest-id vertex whenever that keeps the graph
/// simple and the next corner is used otherwise.
pub fn triangulate(g: &PlaneGraph) -> Result<PlaneGraph> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::SizeLimit(format!(
            "triangulation needs at least 3 vertices, got {n}"
        )));
    }
    g.validate()?;
    if g.vertex_components().len() != 1 {
        return Err(Error::Disconnected(
            "triangulate one component at a time".into(),
        ));
    }
    let mut adj = Graph::new(n);
    for e in 0..g.edge_count() {
        let [a, b] = g.ends(e);
        if !adj.add_edge(a, b) {
            return Err(Error::Structure(format!(
                "edge {e} is parallel to an earlier edge"
            )));
        }
    }
    let mut t = g.clone();
    let mut work: Vec<Dart> = t.faces().darts.iter().map(|f| f[0]).collect();
    while let Some(d0) = work.pop() {
        let walk = t.face_walk(d0);
        let len = walk.len();
        if len <= 3 {
            continue;
        }
        let verts: Vec<usize> = walk.iter().map(|&d| t.tail(d)).collect();
        let mut corners: Vec<usize> = (0..len).collect();
        corners.sort_by_key(|&i| (verts[i], i));
        let i = corners
            .into_iter()
            .find(|&i| {
                let (a, c) = (verts[i], verts[(i + 2) % len]);
                a != c && !adj.has_edge(a, c)
            })
            .ok_or_else(|| {
                Error::Structure(format!("no simple chord available in face of length {len}"))
            })?;
        let (a, c) = (verts[i], verts[(i + 2) % len]);
        let e = t.insert_edge_in_face(walk[i], walk[(i + 2) % len]);
        adj.add_edge(a, c);
        work.push(2 * e);
        work.push(2 * e + 1);
    }
    Ok(t)
}

/// Joins the components of `g` into one by an edge from the lowest vertex of
/// the first component to the lowest vertex of each other component. Any
/// choice of corners keeps the embedding plane, since each edge joins two
/// different components.
pub fn connect_components(g: &PlaneGraph) -> PlaneGraph {
    let mut t = g.clone();
    let comps = g.vertex_components();
    if let Some(first) = comps.first() {
        let a = first[0];
        for c in &comps[1..] {
            let b = c[0];
            let (da, db) = (t.first_dart(a), t.first_dart(b));
            t.insert_edge(a, da, b, db);
        }
    }
    t
}

/// Layers by BFS distance from `root`. The tree parent of each vertex is its
/// lowest-id neighbour in the previous layer.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<(Layering, Vec<Option<usize>>)> {
    let dist = g.bfs_distances(root);
    if let Some(v) = dist.iter().position(Option::is_none) {
        return Err(Error::Disconnected(format!(
            "vertex {v} is unreachable from {root}; process components separately"
        )));
    }
    let dist: Vec<usize> = dist.into_iter().map(Option::unwrap).collect();
    let parent = (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .find(|&w| dist[w] + 1 == dist[v])
        })
        .collect();
    Ok((Layering::from_layer_of(dist), parent))
}
