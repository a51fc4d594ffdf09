use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A collection of paths in `base`, each of length at most `declared_k`,
/// with every vertex internal to at most `declared_d` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortcutSystem {
    pub base: Graph,
    pub paths: Vec<Vec<usize>>,
    pub declared_k: usize,
    pub declared_d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortcutValidation {
    /// Longest path length (edges); zero for an empty system.
    pub k_actual: usize,
    /// Largest number of paths any vertex is internal to.
    pub d_actual: usize,
    /// Indices of entries that are not paths of the base graph.
    pub violations: Vec<usize>,
    /// Internal load of each vertex.
    pub load: Vec<usize>,
}

impl ShortcutValidation {
    /// True if the system is valid and within the given parameters.
    pub fn within(&self, k: usize, d: usize) -> bool {
        self.violations.is_empty() && self.k_actual <= k && self.d_actual <= d
    }
}

impl ShortcutSystem {
    pub fn new(base: Graph, paths: Vec<Vec<usize>>, declared_k: usize, declared_d: usize) -> Self {
        ShortcutSystem {
            base,
            paths,
            declared_k,
            declared_d,
        }
    }

    /// The system itself plus a length-1 path for every base edge.
    pub fn augmented_paths(&self) -> Vec<Vec<usize>> {
        let mut out = self.paths.clone();
        out.extend(self.base.edges().map(|(u, v)| vec![u, v]));
        out
    }
}

pub fn validate_shortcuts(s: &ShortcutSystem) -> ShortcutValidation {
    let n = s.base.vertex_count();
    let mut load = vec![0; n];
    let mut violations = Vec::new();
    let mut k_actual = 0;
    for (i, p) in s.paths.iter().enumerate() {
        let in_range = p.iter().all(|&v| v < n);
        let mut distinct = p.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let ok = p.len() >= 2
            && in_range
            && distinct.len() == p.len()
            && p.windows(2).all(|w| s.base.has_edge(w[0], w[1]));
        if !ok {
            violations.push(i);
            continue;
        }
        k_actual = k_actual.max(p.len() - 1);
        for &v in &p[1..p.len() - 1] {
            load[v] += 1;
        }
    }
    ShortcutValidation {
        k_actual,
        d_actual: load.iter().copied().max().unwrap_or(0),
        violations,
        load,
    }
}

/// `G^P`: the base graph plus an edge between the ends of every path.
pub fn apply_shortcuts(s: &ShortcutSystem) -> Graph {
    let mut g = s.base.clone();
    for p in &s.paths {
        if let (Some(&a), Some(&b)) = (p.first(), p.last()) {
            if a != b {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_only_system() {
        let g = Graph::path(4);
        let s = ShortcutSystem::new(
            g.clone(),
            g.edges().map(|(a, b)| vec![a, b]).collect(),
            1,
            0,
        );
        let v = validate_shortcuts(&s);
        assert_eq!((v.k_actual, v.d_actual), (1, 0));
        assert!(v.violations.is_empty());
        assert_eq!(apply_shortcuts(&s), g);
    }

    #[test]
    fn p5_square_via_length_two_paths() {
        let g = Graph::path(5);
        let s = ShortcutSystem::new(g, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]], 2, 1);
        let v = validate_shortcuts(&s);
        assert_eq!((v.k_actual, v.d_actual), (2, 1));
        let sq = apply_shortcuts(&s);
        assert_eq!(sq.edge_count(), 7);
        assert!(sq.has_edge(0, 2) && sq.has_edge(2, 4) && !sq.has_edge(0, 3));
    }

    #[test]
    fn duplicate_path_doubles_load_and_bad_paths_are_reported() {
        let g = Graph::path(3);
        let s = ShortcutSystem::new(
            g,
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 2], vec![1, 0, 1]],
            2,
            2,
        );
        let v = validate_shortcuts(&s);
        assert_eq!(v.d_actual, 2);
        assert_eq!(v.load[1], 2);
        assert_eq!(v.violations, vec![2, 3]);
    }

    #[test]
    fn long_single_shortcut_adds_chord() {
        let s = ShortcutSystem::new(Graph::path(5), vec![vec![0, 1, 2, 3, 4]], 4, 1);
        let g = apply_shortcuts(&s);
        assert_eq!(g.edge_count(), 5);
        assert!(g.has_edge(0, 4));
    }
}
