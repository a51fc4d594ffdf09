use std::collections::VecDeque;

use super::ShortcutSystem;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One shortest path for every pair of vertices at distance `1..=k`, so that
/// applying the system yields exactly the `k`-th power of `g`. Paths follow
/// BFS trees in which every vertex's parent is its lowest-id neighbour one
/// step closer to the source. Declared parameters are `(k, 2kΔ^k)`.
pub fn power_shortcuts(g: &Graph, k: usize) -> Result<ShortcutSystem> {
    if k == 0 {
        return Err(Error::Malformed("power exponent must be at least 1".into()));
    }
    let n = g.vertex_count();
    let mut paths = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for x in 0..n {
        let mut seen = vec![x];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            if dist[v] == k {
                continue;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    seen.push(w);
                    queue.push_back(w);
                }
            }
        }
        // The BFS discoverer need not be the lowest-id parent.
        for &y in &seen {
            if y != x {
                parent[y] = g
                    .neighbors(y)
                    .iter()
                    .copied()
                    .find(|&w| dist[w] < dist[y] && dist[w] + 1 == dist[y])
                    .unwrap();
            }
        }
        for &y in &seen {
            if y > x {
                let mut p = vec![y];
                let mut v = y;
                while v != x {
                    v = parent[v];
                    p.push(v);
                }
                p.reverse();
                paths.push(p);
            }
        }
        for &y in &seen {
            dist[y] = usize::MAX;
        }
    }
    paths.sort();
    Ok(ShortcutSystem::new(
        g.clone(),
        paths,
        k,
        power_load_cap(k, g.max_degree()),
    ))
}

/// `2kΔ^k`, saturating.
pub fn power_load_cap(k: usize, max_degree: usize) -> usize {
    let mut p: usize = 1;
    for _ in 0..k {
        p = p.saturating_mul(max_degree);
    }
    p.saturating_mul(2).saturating_mul(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortcut::{apply_shortcuts, validate_shortcuts};

    #[test]
    fn p5_square() {
        let s = power_shortcuts(&Graph::path(5), 2).unwrap();
        assert_eq!(s.paths.len(), 7);
        assert!(s.paths.contains(&vec![0, 1, 2]) && s.paths.contains(&vec![2, 3, 4]));
        let v = validate_shortcuts(&s);
        assert_eq!((v.k_actual, v.d_actual), (2, 1));
        assert_eq!(s.declared_d, 16);
        let sq = apply_shortcuts(&s);
        assert_eq!(sq.edge_count(), 7);
    }

    #[test]
    fn star_centre_load() {
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let s = power_shortcuts(&star, 2).unwrap();
        let v = validate_shortcuts(&s);
        assert_eq!(v.load[0], 6);
        assert_eq!(s.declared_d, 64);
        assert_eq!(apply_shortcuts(&s), Graph::complete(5));
    }

    #[test]
    fn first_power_is_the_graph() {
        let g = Graph::cycle(6);
        let s = power_shortcuts(&g, 1).unwrap();
        assert_eq!(apply_shortcuts(&s), g);
        assert_eq!(validate_shortcuts(&s).d_actual, 0);
        assert!(power_shortcuts(&g, 0).is_err());
    }
}
