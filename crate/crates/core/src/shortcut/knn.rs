use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{self, Contact, IPoint};
use crate::graph::Graph;

/// The `k`-nearest-neighbour graph: `vw` is an edge when `w` is among the
/// `k` points closest to `v` or vice versa. Distance ties are broken by
/// lexicographic point order.
pub fn knn_build(points: &[IPoint], k: usize) -> Result<Graph> {
    let n = points.len();
    if n <= k {
        return Err(Error::SizeLimit(format!(
            "{n} points cannot each have {k} neighbours"
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Geometry("points must be distinct".into()));
    }
    let mut g = Graph::new(n);
    for v in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        others.sort_by_key(|&w| (geom::dist2(points[v], points[w]), points[w]));
        for &w in &others[..k] {
            g.add_edge(v, w);
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnnStats {
    pub max_crossings: usize,
    pub max_degree: usize,
    /// `6k`.
    pub degree_cap: usize,
    /// `78k² − 6k`.
    pub crossing_cap: usize,
    /// Pairs of edges that touch or overlap without a proper crossing; these
    /// are not counted as crossings.
    pub degenerate_pairs: usize,
    pub bound_ok: bool,
}

/// Counts proper crossings per edge of a straight-line graph and compares
/// the maximum, and the maximum degree, with the `k`-nearest-neighbour caps.
pub fn knn_crossing_stats(points: &[IPoint], g: &Graph, k: usize) -> KnnStats {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut crossed = vec![0usize; edges.len()];
    let mut degenerate_pairs = 0;
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            match geom::segment_contact(points[a], points[b], points[c], points[d]) {
                Contact::Disjoint => {}
                Contact::Degenerate => degenerate_pairs += 1,
                Contact::Proper => {
                    crossed[i] += 1;
                    crossed[j] += 1;
                }
            }
        }
    }
    let max_crossings = crossed.into_iter().max().unwrap_or(0);
    let max_degree = g.max_degree();
    let degree_cap = 6 * k;
    let crossing_cap = (78 * k * k).saturating_sub(6 * k);
    KnnStats {
        max_crossings,
        max_degree,
        degree_cap,
        crossing_cap,
        degenerate_pairs,
        bound_ok: max_crossings <= crossing_cap && max_degree <= degree_cap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<IPoint> {
        v.iter().map(|&(x, y)| IPoint::new(x, y)).collect()
    }

    #[test]
    fn collinear_nearest_neighbours() {
        let p = pts(&[(0, 0), (1, 0), (3, 0)]);
        let g = knn_build(&p, 1).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let s = knn_crossing_stats(&p, &g, 1);
        assert_eq!(s.max_crossings, 0);
        assert!(s.bound_ok);
    }

    #[test]
    fn all_neighbours_give_complete_graph() {
        let p = pts(&[(0, 0), (5, 1), (2, 7), (9, 3)]);
        assert_eq!(knn_build(&p, 3).unwrap(), Graph::complete(4));
        assert!(matches!(knn_build(&p, 4), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn square_ties_go_to_the_lexicographically_first_point() {
        let p = pts(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let g = knn_build(&p, 1).unwrap();
        // (0,0) -> (0,1); (0,1) -> (0,0); (1,0) -> (0,0); (1,1) -> (0,1).
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3)]);
        assert!(g.max_degree() <= 6);
    }

    #[test]
    fn crossing_is_counted() {
        let p = pts(&[(0, 0), (2, 2), (0, 2), (2, 0)]);
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = knn_crossing_stats(&p, &g, 1);
        assert_eq!(s.max_crossings, 1);
        assert_eq!(s.crossing_cap, 72);
    }
}
