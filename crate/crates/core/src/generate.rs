//! Seeded instance generators.
//!
//! Every generator takes a [`ChaCha8Rng`]; the same seed and parameters give
//! the same instance on every platform.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{self, Contact, IPoint};
use crate::graph::{Graph, HPartition};
use crate::planar::{planarize, Drawing, PlaneGraph};
use crate::shortcut::{CurveArrangement, MapInstance, ShortcutSystem};

/// The generator used throughout: ChaCha with 8 rounds, seeded from a `u64`.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Inserts a new vertex into the triangular face left of `d0`, joined to its
/// three corners.
fn stack_vertex(g: &mut PlaneGraph, d0: usize) -> usize {
    let walk = g.face_walk(d0);
    debug_assert_eq!(walk.len(), 3);
    let (a, b, c) = (g.tail(walk[0]), g.tail(walk[1]), g.tail(walk[2]));
    let v = g.add_vertex();
    let ea = g.insert_edge(a, Some(walk[0]), v, None);
    let eb = g.insert_edge(b, Some(walk[1]), v, Some(2 * ea + 1));
    g.insert_edge(c, Some(walk[2]), v, Some(2 * eb + 1));
    v
}

fn triangle() -> PlaneGraph {
    let mut g = PlaneGraph::new(3);
    let e0 = g.insert_edge(0, None, 1, None);
    let e1 = g.insert_edge(1, Some(2 * e0 + 1), 2, None);
    g.insert_edge(2, Some(2 * e1 + 1), 0, Some(2 * e0));
    g
}

/// Random simple plane triangulation on `n ≥ 3` vertices: vertices are
/// stacked into uniformly chosen faces, then `2n` random edge flips mix the
/// result. The outer face is the one left of dart 1.
pub fn random_plane_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::Generation(
            "a triangulation needs at least 3 vertices".into(),
        ));
    }
    let mut g = triangle();
    for _ in 3..n {
        let faces = g.faces();
        let f = rng.gen_range(0..faces.len());
        stack_vertex(&mut g, faces.darts[f][0]);
    }
    if n > 4 {
        for _ in 0..2 * n {
            let e = rng.gen_range(0..g.edge_count());
            let [a, b] = g.ends(e);
            if g.degree(a) > 3 && g.degree(b) > 3 {
                g.flip_edge(e);
            }
        }
    }
    g.set_outer_dart(Some(1));
    Ok(g)
}

/// Random 1-plane graph as a planarization: a random plane quadrangulation
/// on `n ≥ 4` vertices, where each face independently (with probability
/// `diagonal_prob`) gets both diagonals, drawn crossing at a new crossing
/// vertex. Diagonals that would duplicate an existing adjacency are skipped.
/// Crossing vertices are numbered after the `n` original vertices.
pub fn random_one_plane(n: usize, diagonal_prob: f64, rng: &mut ChaCha8Rng) -> Result<PlaneGraph> {
    if n < 4 {
        return Err(Error::Generation(
            "a quadrangulation needs at least 4 vertices".into(),
        ));
    }
    // Start from a 4-cycle and split random faces a,b,c,d by a new vertex
    // joined to a and c (or b and d).
    let mut g = PlaneGraph::new(4);
    let e0 = g.insert_edge(0, None, 1, None);
    let e1 = g.insert_edge(1, Some(2 * e0 + 1), 2, None);
    let e2 = g.insert_edge(2, Some(2 * e1 + 1), 3, None);
    g.insert_edge(3, Some(2 * e2 + 1), 0, Some(2 * e0));
    let mut adjacent: HashSet<(usize, usize)> =
        [(0, 1), (1, 2), (2, 3), (0, 3)].into_iter().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    while g.vertex_count() < n {
        let faces = g.faces();
        let f = &faces.darts[rng.gen_range(0..faces.len())];
        let s = rng.gen_range(0..4);
        let (da, dc) = (f[s], f[(s + 2) % 4]);
        let (a, c) = (g.tail(da), g.tail(dc));
        let v = g.add_vertex();
        let ea = g.insert_edge(a, Some(da), v, None);
        g.insert_edge(c, Some(dc), v, Some(2 * ea + 1));
        adjacent.insert(key(a, v));
        adjacent.insert(key(c, v));
    }
    let faces = g.faces();
    let mut chosen = Vec::new();
    for f in &faces.darts {
        let q: Vec<usize> = f.iter().map(|&d| g.tail(d)).collect();
        let distinct: HashSet<usize> = q.iter().copied().collect();
        if distinct.len() != 4 || !rng.gen_bool(diagonal_prob) {
            continue;
        }
        if adjacent.contains(&key(q[0], q[2])) || adjacent.contains(&key(q[1], q[3])) {
            continue;
        }
        adjacent.insert(key(q[0], q[2]));
        adjacent.insert(key(q[1], q[3]));
        chosen.push(f[0]);
    }
    for d0 in chosen {
        let walk = g.face_walk(d0);
        let x = g.add_vertex();
        g.set_crossing(x, true);
        let mut last = None;
        for &d in &walk {
            let e = g.insert_edge(g.tail(d), Some(d), x, last);
            last = Some(2 * e + 1);
        }
    }
    g.set_outer_dart(Some(1));
    g.validate()?;
    Ok(g)
}

/// Planarization of the `rows × cols` grid with both diagonals drawn in every
/// square, so every square becomes a kite.
pub fn grid_one_plane(rows: usize, cols: usize) -> Result<PlaneGraph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut points = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            points.push((c as i64, r as i64));
        }
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c), id(r + 1, c + 1)));
                edges.push((id(r, c + 1), id(r + 1, c)));
            }
        }
    }
    Ok(planarize(&Drawing::from_int_points(&points, edges), Some(1))?.plane)
}

/// `n` distinct random integer points in `[0, 2^20)²`.
pub fn random_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<IPoint> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = IPoint::new(rng.gen_range(0..1 << 20), rng.gen_range(0..1 << 20));
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Random straight-line drawing on `n` random points in which every edge is
/// crossed at most `k` times. Candidate edges join each point to its eight
/// nearest neighbours and are tried in random order; an edge is kept if it
/// stays in general position and within the crossing budget.
pub fn random_kplane_drawing(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Drawing> {
    if n < 2 {
        return Err(Error::Generation(
            "a drawing needs at least 2 points".into(),
        ));
    }
    let pts = random_points(n, rng);
    let mut cand: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        let mut near: Vec<usize> = (0..n).filter(|&b| b != a).collect();
        near.sort_by_key(|&b| (geom::dist2(pts[a], pts[b]), b));
        for &b in near.iter().take(8) {
            cand.push((a.min(b), a.max(b)));
        }
    }
    cand.sort_unstable();
    cand.dedup();
    cand.shuffle(rng);

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut crossed: Vec<usize> = Vec::new();
    let mut points_used: HashSet<(BigRational, BigRational)> = HashSet::new();
    'next: for (a, b) in cand {
        if (0..n).any(|v| v != a && v != b && geom::on_segment(pts[v], pts[a], pts[b])) {
            continue;
        }
        let mut hits = Vec::new();
        let mut new_points = Vec::new();
        for (i, &(c, d)) in edges.iter().enumerate() {
            if [c, d].iter().any(|&x| x == a || x == b) {
                let p = if c == a || c == b { c } else { d };
                let q = if p == a { b } else { a };
                let r = if p == c { d } else { c };
                let (u, w) = (pts[q].sub(pts[p]), pts[r].sub(pts[p]));
                if u.0 * w.1 - u.1 * w.0 == 0 && u.0 * w.0 + u.1 * w.1 > 0 {
                    continue 'next;
                }
                continue;
            }
            match geom::segment_contact(pts[a], pts[b], pts[c], pts[d]) {
                Contact::Disjoint => {}
                Contact::Degenerate => continue 'next,
                Contact::Proper => {
                    if crossed[i] + 1 > k {
                        continue 'next;
                    }
                    let x = geom::crossing_point(pts[a], pts[b], pts[c], pts[d]);
                    if points_used.contains(&x) || new_points.contains(&x) {
                        continue 'next;
                    }
                    new_points.push(x);
                    hits.push(i);
                }
            }
        }
        if hits.len() > k {
            continue;
        }
        for i in &hits {
            crossed[*i] += 1;
        }
        points_used.extend(new_points);
        crossed.push(hits.len());
        edges.push((a, b));
    }
    Ok(Drawing {
        points: pts
            .iter()
            .map(|p| {
                (
                    BigRational::from_integer(BigInt::from(p.x)),
                    BigRational::from_integer(BigInt::from(p.y)),
                )
            })
            .collect(),
        edges,
    })
}

/// Random connected graph: a random spanning tree plus up to `extra` random
/// edges, never exceeding `max_degree` where avoidable (the tree itself is
/// built with a degree limit of at least 2).
pub fn random_connected_graph(
    n: usize,
    extra: usize,
    max_degree: usize,
    rng: &mut ChaCha8Rng,
) -> Graph {
    let mut g = Graph::new(n);
    let cap = max_degree.max(2);
    for v in 1..n {
        let choices: Vec<usize> = (0..v).filter(|&u| g.degree(u) < cap).collect();
        let u = if choices.is_empty() {
            v - 1
        } else {
            *choices.choose(rng).unwrap()
        };
        g.add_edge(u, v);
    }
    if n >= 2 {
        for _ in 0..extra {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && g.degree(a) < max_degree && g.degree(b) < max_degree {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Uniformly random graph `G(n, q)`.
pub fn random_gnp(n: usize, q: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(q) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Random map instance: a random plane triangulation on `n` vertices, minus
/// each edge outside a random spanning tree with probability
/// `remove_prob`, with every face labelled a nation with probability
/// `nation_prob` and a lake otherwise.
pub fn random_map_instance(
    n: usize,
    remove_prob: f64,
    nation_prob: f64,
    rng: &mut ChaCha8Rng,
) -> Result<MapInstance> {
    let tri = random_plane_triangulation(n, rng)?;
    let m = tri.edge_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(d: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while d[r] != r {
            r = d[r];
        }
        let mut y = x;
        while d[y] != r {
            let next = d[y];
            d[y] = r;
            y = next;
        }
        r
    }
    let mut keep = vec![false; m];
    for &e in &order {
        let [a, b] = tri.ends(e);
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra != rb {
            dsu[ra] = rb;
            keep[e] = true;
        }
    }
    for k in keep.iter_mut() {
        if !*k && !rng.gen_bool(remove_prob) {
            *k = true;
        }
    }
    let (mut g, _) = tri.retain_edges(&keep);
    g.set_outer_dart(None);
    let nation = (0..g.faces().len())
        .map(|_| rng.gen_bool(nation_prob))
        .collect();
    MapInstance::new(g, nation)
}

/// Random arrangement of `m` x-monotone polylines with `bends + 1` segments
/// each on the integer grid `[0, size)²`, each inside a random square of a
/// quarter of the side. Curves are added one at a time
/// and redrawn when they would create a degenerate contact or give some
/// curve more than `delta` crossings.
pub fn random_curves(
    m: usize,
    bends: usize,
    size: i64,
    delta: usize,
    rng: &mut ChaCha8Rng,
) -> Result<CurveArrangement> {
    if size < 2 * (bends as i64 + 2) {
        return Err(Error::Generation(format!(
            "grid of size {size} is too small for {bends} bends"
        )));
    }
    let span = (size / 4).max(bends as i64 + 2);
    let mut curves: Vec<Vec<(i64, i64)>> = Vec::new();
    for i in 0..m {
        let mut placed = false;
        for _ in 0..200 {
            let (x0, y0) = (rng.gen_range(0..size - span), rng.gen_range(0..size - span));
            let mut xs: Vec<i64> = Vec::new();
            while xs.len() < bends + 2 {
                let x = x0 + rng.gen_range(0..span);
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            xs.sort_unstable();
            let c: Vec<(i64, i64)> = xs
                .into_iter()
                .map(|x| (x, y0 + rng.gen_range(0..span)))
                .collect();
            curves.push(c);
            let ok = CurveArrangement::from_int_curves(&curves)
                .intersection_counts()
                .is_ok_and(|counts| counts.iter().all(|&c| c <= delta));
            if ok {
                placed = true;
                break;
            }
            curves.pop();
        }
        if !placed {
            return Err(Error::Generation(format!(
                "could not place curve {i} after 200 tries"
            )));
        }
    }
    Ok(CurveArrangement::from_int_curves(&curves))
}

/// Random shortcut system on `g`: up to `count` simple paths, each a random
/// walk of length `1..=k` that never revisits a vertex, kept only if no
/// vertex becomes internal to more than `d` paths. Declares `(k, d)`.
pub fn random_shortcut_system(
    g: &Graph,
    k: usize,
    d: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> ShortcutSystem {
    let n = g.vertex_count();
    let mut load = vec![0; n];
    let mut paths = Vec::new();
    if n > 0 && k > 0 {
        for _ in 0..count {
            let len = rng.gen_range(1..=k);
            let mut p = vec![rng.gen_range(0..n)];
            while p.len() <= len {
                let last = *p.last().unwrap();
                let next: Vec<usize> = g
                    .neighbors(last)
                    .iter()
                    .copied()
                    .filter(|w| !p.contains(w))
                    .collect();
                match next.choose(rng) {
                    Some(&w) => p.push(w),
                    None => break,
                }
            }
            if p.len() < 2 || p[1..p.len() - 1].iter().any(|&v| load[v] >= d) {
                continue;
            }
            for &v in &p[1..p.len() - 1] {
                load[v] += 1;
            }
            paths.push(p);
        }
    }
    ShortcutSystem::new(g.clone(), paths, k, d)
}

/// Random partition of `g` into about `parts` connected pieces grown by
/// simultaneous BFS from random seeds; vertices of other components form
/// further pieces.
pub fn random_connected_partition(g: &Graph, parts: usize, rng: &mut ChaCha8Rng) -> HPartition {
    let n = g.vertex_count();
    let mut part = vec![usize::MAX; n];
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.shuffle(rng);
    let mut queue = std::collections::VecDeque::new();
    let mut next_id = 0;
    for &s in seeds.iter().take(parts.max(1)) {
        part[s] = next_id;
        next_id += 1;
        queue.push_back(s);
    }
    loop {
        while let Some(v) = queue.pop_front() {
            let mut nb: Vec<usize> = g.neighbors(v).to_vec();
            nb.shuffle(rng);
            for w in nb {
                if part[w] == usize::MAX {
                    part[w] = part[v];
                    queue.push_back(w);
                }
            }
        }
        match part.iter().position(|&x| x == usize::MAX) {
            Some(v) => {
                part[v] = next_id;
                next_id += 1;
                queue.push_back(v);
            }
            None => break,
        }
    }
    HPartition::from_assignment_with_count(next_id.min(n).max(if n == 0 { 0 } else { 1 }), part)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_edge_count() {
        let g = random_plane_triangulation(50, &mut rng(7)).unwrap();
        g.validate().unwrap();
        assert!(g.is_triangulation());
        assert_eq!(g.edge_count(), 3 * 50 - 6);
        assert_eq!(g.underlying_graph().edge_count(), 144);
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_plane_triangulation(30, &mut rng(3)).unwrap();
        let b = random_plane_triangulation(30, &mut rng(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_plane_instances_are_valid() {
        for seed in 0..10 {
            let g = random_one_plane(40, 0.5, &mut rng(seed)).unwrap();
            g.validate().unwrap();
            for c in g.crossing_vertices() {
                assert!(c >= 40);
                assert_eq!(g.degree(c), 4);
            }
        }
    }

    #[test]
    fn kplane_drawing_respects_budget() {
        for k in 0..3 {
            let d = random_kplane_drawing(60, k, &mut rng(k as u64)).unwrap();
            let p = planarize(&d, Some(k)).unwrap();
            assert!(p.max_crossings_per_edge() <= k);
        }
    }

    #[test]
    fn map_instances_keep_the_graph_connected() {
        for seed in 0..5 {
            let m = random_map_instance(30, 0.5, 0.6, &mut rng(seed)).unwrap();
            assert!(m.graph.underlying_graph().is_connected());
            assert!(!m.nations().is_empty());
        }
    }

    #[test]
    fn curves_respect_the_crossing_budget() {
        let a = random_curves(12, 2, 200, 4, &mut rng(1)).unwrap();
        assert_eq!(a.curves.len(), 12);
        assert!(a.max_intersections().unwrap() <= 4);
    }

    #[test]
    fn shortcut_systems_respect_declared_parameters() {
        let g = random_connected_graph(40, 40, 6, &mut rng(2));
        let s = random_shortcut_system(&g, 3, 2, 60, &mut rng(3));
        let v = crate::shortcut::validate_shortcuts(&s);
        assert!(v.within(3, 2));
        assert!(!s.paths.is_empty());
    }

    #[test]
    fn connected_partition_covers_everything() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let p = random_connected_partition(&g, 2, &mut rng(4));
        assert_eq!(p.vertex_count(), 6);
        assert!(p.parts().iter().all(|x| !x.is_empty()));
    }
}
