//! Recursive tripod partition of a plane triangulation.
//!
//! The interior of a region bounded by a cycle `F` is split by a tripod: a
//! face `τ` whose three corners carry three different Sperner colours, plus
//! the BFS-tree paths from the corners of `τ` down to `F`. The tripod becomes
//! a new part, and every face-connected piece of the remaining region is
//! handled recursively with the tripod and `F` as its new boundary. The tree
//! decomposition of the quotient mirrors the recursion; each bag holds the
//! at most three parts on a region's boundary plus the new part.
//!
//! For 1-plane inputs the triangulation is the graph with one spar per kite
//! removed. Whenever a tripod uses a kept spar, the other two kite vertices
//! join the tripod and the kite's sail edges join the separating edge set, so
//! no region boundary ever contains a crossed edge.

use std::collections::HashMap;

use serde::Serialize;

use super::embedding::{Dart, PlaneGraph};
use crate::error::{consistency, Error, Result};
use crate::graph::{Graph, HPartition, Layering, TreeDecomposition};

/// The kite around a kept spar: the endpoints of the removed spar and the
/// four sail edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KiteInfo {
    pub others: [usize; 2],
    pub sails: [usize; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct Tripod {
    pub part: usize,
    /// The trichromatic face.
    pub face: [usize; 3],
    /// For each corner of `face` not on the region boundary, the BFS-tree
    /// path from that corner down to (excluding) the boundary.
    pub legs: Vec<Vec<usize>>,
    /// Vertices added from kites of crossed tripod edges.
    pub kite_vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TripodPartition {
    pub partition: HPartition,
    /// Tree decomposition of the quotient, with part ids as vertices.
    pub decomposition: TreeDecomposition,
    /// BFS distance from the outer face (outer vertices at level 0).
    pub levels: Layering,
    pub tripods: Vec<Tripod>,
    /// Parent of each vertex in the BFS forest (`None` on the outer face).
    pub bfs_parent: Vec<Option<usize>>,
}

struct Item {
    boundary: Vec<Dart>,
    faces: Vec<usize>,
    parent: Option<usize>,
}

/// Runs the recursion on triangulation `tri` with outer face left of
/// `outer`. `kites` maps kept-spar edge ids to their kites; `cell_cap`
/// bounds `|P ∩ L_j|` for the boundary pieces of every region.
pub(crate) fn tripod_recursion(
    tri: &PlaneGraph,
    outer: Dart,
    kites: &HashMap<usize, KiteInfo>,
    cell_cap: usize,
) -> Result<TripodPartition> {
    tri.validate()?;
    if !tri.is_triangulation() {
        return Err(Error::Structure(
            "input is not a triangulation: some face is not a triangle".into(),
        ));
    }
    if tri.vertex_components().len() != 1 {
        return Err(Error::Structure(
            "input triangulation is disconnected".into(),
        ));
    }
    let n = tri.vertex_count();
    let faces = tri.faces();
    let outer_face = faces.face_of[outer];
    let outer_verts: Vec<usize> = faces.darts[outer_face]
        .iter()
        .map(|&d| tri.tail(d))
        .collect();
    {
        let mut s = outer_verts.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != 3 {
            return Err(Error::Structure(
                "outer face is not a triangle on three vertices".into(),
            ));
        }
    }

    // Multi-source BFS from the outer triangle; parent is the lowest-id
    // neighbour one level up, joined by its lowest-id edge.
    let mut level = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in &outer_verts {
        level[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for d in tri.darts_around(v) {
            let w = tri.head(d);
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut parent_edge: Vec<Option<(usize, usize)>> = vec![None; n];
    for v in 0..n {
        if level[v] == 0 {
            continue;
        }
        parent_edge[v] = tri
            .darts_around(v)
            .into_iter()
            .filter(|&d| level[tri.head(d)] + 1 == level[v])
            .map(|d| (tri.head(d), d / 2))
            .min();
    }

    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &v in &outer_verts {
        part_of[v] = parts.len();
        parts.push(vec![v]);
    }
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut tripods = Vec::new();

    let root_boundary: Vec<Dart> = faces.darts[outer_face].iter().map(|&d| d ^ 1).collect();
    let root_faces: Vec<usize> = (0..faces.len()).filter(|&f| f != outer_face).collect();
    let mut work = vec![Item {
        boundary: order_cycle(tri, &root_boundary)?,
        faces: root_faces,
        parent: None,
    }];
    if n == 3 {
        bags.push(vec![0, 1, 2]);
        work.clear();
    }

    // Scratch marks, reset per item by stamping.
    let mut stamp = 0usize;
    let mut on_boundary = vec![0usize; n];
    let mut in_region = vec![0usize; n];
    let mut group = vec![0usize; n];
    let mut colour = vec![usize::MAX; n];
    let mut face_in_region = vec![0usize; faces.len()];
    let mut face_seen = vec![0usize; faces.len()];
    let mut separating = vec![0usize; tri.edge_count()];

    while let Some(item) = work.pop() {
        stamp += 1;
        let bverts: Vec<usize> = item.boundary.iter().map(|&d| tri.tail(d)).collect();
        for &v in &bverts {
            on_boundary[v] = stamp;
        }
        for &d in &item.boundary {
            if kites.contains_key(&(d / 2)) {
                return Err(Error::Structure(format!(
                    "4a No edge of F is crossed: boundary edge {} is a spar",
                    d / 2
                )));
            }
        }
        let bparts: Vec<usize> = bverts.iter().map(|&v| part_of[v]).collect();
        let arcs = boundary_arcs(&bparts)?;
        check_cells(&bverts, &bparts, &level, cell_cap)?;

        for &f in &item.faces {
            face_in_region[f] = stamp;
        }
        let mut interior = Vec::new();
        for &f in &item.faces {
            for &d in &faces.darts[f] {
                let v = tri.tail(d);
                if on_boundary[v] != stamp && in_region[v] != stamp {
                    in_region[v] = stamp;
                    interior.push(v);
                }
            }
        }
        if let Some(&v) = interior.iter().find(|&&v| part_of[v] != usize::MAX) {
            return Err(consistency(
                "region-interior",
                format!("interior vertex {v} is already assigned"),
            ));
        }

        // Boundary groups R_1, R_2, R_3 and the trichromatic face.
        let tau_face = if bverts.len() >= 3 {
            for (g, arc) in split_groups(&arcs, &bverts).iter().enumerate() {
                for &i in arc {
                    group[bverts[i]] = g;
                }
            }
            interior.sort_by_key(|&v| (level[v], v));
            for &v in &interior {
                let (p, _) = parent_edge[v].unwrap();
                colour[v] = if on_boundary[p] == stamp {
                    group[p]
                } else if in_region[p] == stamp {
                    colour[p]
                } else {
                    return Err(consistency(
                        "region-closed",
                        format!("parent of {v} leaves the region"),
                    ));
                };
            }
            let col = |v: usize| {
                if on_boundary[v] == stamp {
                    group[v]
                } else {
                    colour[v]
                }
            };
            let mut chosen = None;
            for &f in &item.faces {
                let cs: Vec<usize> = faces.darts[f].iter().map(|&d| col(tri.tail(d))).collect();
                if cs[0] != cs[1]
                    && cs[1] != cs[2]
                    && cs[0] != cs[2]
                    && chosen.map_or(true, |c| f < c)
                {
                    chosen = Some(f);
                }
            }
            chosen.ok_or_else(|| consistency("sperner", "no trichromatic face in region"))?
        } else {
            // A two-vertex boundary (parallel edges): use the face beside
            // the first boundary dart.
            faces.face_of[item.boundary[0]]
        };
        let face_darts = &faces.darts[tau_face];
        let face: [usize; 3] = [
            tri.tail(face_darts[0]),
            tri.tail(face_darts[1]),
            tri.tail(face_darts[2]),
        ];

        // Separating edges: boundary, tripod, legs, and sails of used kites.
        let mut ybar_edges: Vec<usize> = face_darts.iter().map(|&d| d / 2).collect();
        let mut legs = Vec::new();
        let mut new_part: Vec<usize> = Vec::new();
        for &c in &face {
            if on_boundary[c] == stamp {
                continue;
            }
            let mut leg = vec![c];
            let mut v = c;
            loop {
                let (p, e) = parent_edge[v].unwrap();
                ybar_edges.push(e);
                if on_boundary[p] == stamp {
                    break;
                }
                leg.push(p);
                v = p;
            }
            legs.push(leg);
        }
        for leg in &legs {
            new_part.extend(leg.iter().copied());
        }
        {
            let mut s = new_part.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != new_part.len() {
                return Err(consistency(
                    "disjoint-legs",
                    format!("tripod legs overlap: {legs:?}"),
                ));
            }
        }
        let mut kite_vertices = Vec::new();
        let mut sails = Vec::new();
        for &e in &ybar_edges {
            if let Some(k) = kites.get(&e) {
                sails.extend(k.sails);
                for &x in &k.others {
                    if on_boundary[x] != stamp
                        && !new_part.contains(&x)
                        && !kite_vertices.contains(&x)
                    {
                        kite_vertices.push(x);
                    }
                }
            }
        }
        new_part.extend(kite_vertices.iter().copied());
        for &d in &item.boundary {
            separating[d / 2] = stamp;
        }
        for &e in ybar_edges.iter().chain(&sails) {
            separating[e] = stamp;
        }

        let node = bags.len();
        let mut bag: Vec<usize> = arcs.iter().map(|a| a.0).collect();
        if !new_part.is_empty() {
            let x = parts.len();
            for &v in &new_part {
                part_of[v] = x;
            }
            new_part.sort_unstable();
            parts.push(new_part);
            bag.push(x);
            tripods.push(Tripod {
                part: x,
                face,
                legs,
                kite_vertices,
            });
        }
        bags.push(bag);
        if let Some(p) = item.parent {
            tree_edges.push((p, node));
        }

        // Face-connected pieces of the region across non-separating edges.
        for &f0 in &item.faces {
            if face_seen[f0] == stamp {
                continue;
            }
            face_seen[f0] = stamp;
            let mut piece = vec![f0];
            let mut i = 0;
            while i < piece.len() {
                let f = piece[i];
                i += 1;
                for &d in &faces.darts[f] {
                    if separating[d / 2] == stamp {
                        continue;
                    }
                    let g = faces.face_of[d ^ 1];
                    if face_in_region[g] != stamp {
                        return Err(consistency(
                            "region-closed",
                            "non-separating edge leaves the region",
                        ));
                    }
                    if face_seen[g] != stamp {
                        face_seen[g] = stamp;
                        piece.push(g);
                    }
                }
            }
            let has_interior = piece.iter().any(|&f| {
                faces.darts[f]
                    .iter()
                    .any(|&d| part_of[tri.tail(d)] == usize::MAX)
            });
            if !has_interior {
                continue;
            }
            let mut border: Vec<Dart> = Vec::new();
            for &f in &piece {
                for &d in &faces.darts[f] {
                    if separating[d / 2] == stamp {
                        border.push(d);
                    }
                }
            }
            work.push(Item {
                boundary: order_cycle(tri, &border)?,
                faces: piece,
                parent: Some(node),
            });
        }
    }

    if let Some(v) = part_of.iter().position(|&x| x == usize::MAX) {
        return Err(consistency(
            "coverage",
            format!("vertex {v} was never assigned"),
        ));
    }
    let mut tree = Graph::new(bags.len());
    for (a, b) in tree_edges {
        tree.add_edge(a, b);
    }
    let partition = HPartition::new(n, parts)?;
    Ok(TripodPartition {
        decomposition: TreeDecomposition::new(tree, bags, Some(0))?,
        partition,
        levels: Layering::from_layer_of(level),
        tripods,
        bfs_parent: parent_edge.iter().map(|p| p.map(|(v, _)| v)).collect(),
    })
}

/// Orders boundary darts into a cycle (each dart's head is the next dart's
/// tail). Fails if the darts do not form one simple cycle.
fn order_cycle(tri: &PlaneGraph, darts: &[Dart]) -> Result<Vec<Dart>> {
    let mut by_tail: HashMap<usize, Dart> = HashMap::new();
    for &d in darts {
        if by_tail.insert(tri.tail(d), d).is_some() {
            return Err(Error::Structure(format!(
                "region boundary is not a simple cycle: vertex {} repeats",
                tri.tail(d)
            )));
        }
    }
    let start = *darts
        .iter()
        .min()
        .ok_or_else(|| Error::Structure("empty region boundary".into()))?;
    let mut out = vec![start];
    let mut d = start;
    loop {
        d = *by_tail
            .get(&tri.head(d))
            .ok_or_else(|| Error::Structure("region boundary is not closed".into()))?;
        if d == start {
            break;
        }
        out.push(d);
    }
    if out.len() != darts.len() {
        return Err(Error::Structure(
            "region boundary splits into several cycles".into(),
        ));
    }
    Ok(out)
}

/// Maximal runs of equal part ids around the boundary, as (part, positions).
/// Each part must form a single run and there may be at most three.
fn boundary_arcs(bparts: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
    let len = bparts.len();
    let start = (0..len)
        .find(|&i| bparts[i] != bparts[(i + len - 1) % len])
        .unwrap_or(0);
    let mut arcs: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..len {
        let i = (start + k) % len;
        match arcs.last_mut() {
            Some((x, pos)) if *x == bparts[i] => pos.push(i),
            _ => arcs.push((bparts[i], vec![i])),
        }
    }
    let mut ids: Vec<usize> = arcs.iter().map(|a| a.0).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != arcs.len() {
        return Err(Error::Structure(
            "4(b)i the boundary meets some part in more than one path".into(),
        ));
    }
    if arcs.len() > 3 {
        return Err(Error::Structure(format!(
            "4(b)i the boundary meets {} parts, more than three",
            arcs.len()
        )));
    }
    Ok(arcs)
}

fn check_cells(bverts: &[usize], bparts: &[usize], level: &[usize], cap: usize) -> Result<()> {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for (&v, &x) in bverts.iter().zip(bparts) {
        let c = count.entry((x, level[v])).or_default();
        *c += 1;
        if *c > cap {
            return Err(Error::Structure(format!(
                "4(b)ii |V(P_i) ∩ L_j| ≤ {cap} fails for part {x} on level {}",
                level[v]
            )));
        }
    }
    Ok(())
}

/// Splits the boundary into three contiguous groups of positions. With three
/// arcs the arcs are the groups; with two, the longer arc is halved; with
/// one, the cycle is cut into near-equal thirds starting at its lowest-id
/// vertex.
fn split_groups(arcs: &[(usize, Vec<usize>)], bverts: &[usize]) -> Vec<Vec<usize>> {
    match arcs.len() {
        3 => arcs.iter().map(|a| a.1.clone()).collect(),
        2 => {
            let (long, short) = if arcs[0].1.len() >= arcs[1].1.len() {
                (0, 1)
            } else {
                (1, 0)
            };
            let l = &arcs[long].1;
            let h = l.len().div_ceil(2);
            vec![l[..h].to_vec(), l[h..].to_vec(), arcs[short].1.clone()]
        }
        _ => {
            let len = bverts.len();
            let s = (0..len).min_by_key(|&i| bverts[i]).unwrap();
            let order: Vec<usize> = (0..len).map(|k| (s + k) % len).collect();
            let a = len.div_ceil(3);
            let b = (len - a).div_ceil(2);
            vec![
                order[..a].to_vec(),
                order[a..a + b].to_vec(),
                order[a + b..].to_vec(),
            ]
        }
    }
}

/// Tripod partition of a simple plane triangulation. The outer face is the
/// one left of the graph's outer dart, or of dart 1 if none is set.
pub fn tripod_partition(tri: &PlaneGraph) -> Result<TripodPartition> {
    let simple = tri.underlying_graph().edge_count() == tri.edge_count();
    if !simple {
        return Err(Error::Structure(
            "input is not a simple triangulation".into(),
        ));
    }
    tripod_recursion(tri, tri.outer_dart().unwrap_or(1), &HashMap::new(), 3)
}
