use std::collections::BTreeSet;

use serde::Serialize;

use super::NormalizedDecomposition;
use crate::error::{consistency, malformed, Result};
use crate::graph::{Graph, HPartition};

/// Outcome of the five properties checked by [`hierarchy`]:
/// `V_x` has no edge leaving `N_x` (y1), `F_x` is covered by at most `t`
/// strict-ancestor parts (y2), `Y_x ⊆ V_x` (y3), and `V_x ⊆ V_a`,
/// `N_x ⊆ N_a` for the parent `a` (y4, y5).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HierarchyChecks {
    pub y1: bool,
    pub y2: bool,
    pub y3: bool,
    pub y4: bool,
    pub y5: bool,
}

impl HierarchyChecks {
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("y1", self.y1),
            ("y2", self.y2),
            ("y3", self.y3),
            ("y4", self.y4),
            ("y5", self.y5),
        ]
        .into_iter()
        .find(|&(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

/// The sets attached to each tree node `x`: `V_x` is the union of the parts
/// in the subtree at `x`, `F_x` the vertices outside `V_x` with a neighbour
/// in it, and `N_x = V_x ∪ F_x`.
#[derive(Clone, Debug)]
pub struct HierarchySets {
    part_of: Vec<usize>,
    f: Vec<Vec<usize>>,
    /// Parts meeting `F_x`; all strict ancestors of `x`.
    pub witnesses: Vec<Vec<usize>>,
    pub checks: HierarchyChecks,
}

impl HierarchySets {
    /// True if `v ∈ V_x`.
    pub fn in_v(&self, nd: &NormalizedDecomposition, x: usize, v: usize) -> bool {
        nd.is_ancestor(x, self.part_of[v])
    }

    pub fn v_set(&self, nd: &NormalizedDecomposition, x: usize) -> Vec<usize> {
        (0..self.part_of.len())
            .filter(|&v| self.in_v(nd, x, v))
            .collect()
    }

    pub fn f_set(&self, x: usize) -> &[usize] {
        &self.f[x]
    }

    pub fn n_set(&self, nd: &NormalizedDecomposition, x: usize) -> Vec<usize> {
        let mut out = self.v_set(nd, x);
        out.extend_from_slice(&self.f[x]);
        out.sort_unstable();
        out
    }
}

/// Builds `F_x` for every node and checks the properties recorded in
/// [`HierarchyChecks`] without failing on them. Parts are tree nodes, so the
/// partition must have one part per node, and every edge of `g` must join
/// parts related by ancestry.
pub fn hierarchy_unchecked(
    g: &Graph,
    partition: &HPartition,
    nd: &NormalizedDecomposition,
) -> Result<HierarchySets> {
    let n = g.vertex_count();
    if partition.vertex_count() != n || partition.part_count() != nd.node_count() {
        return malformed(format!(
            "partition has {} parts over {} vertices; expected {} parts over {n}",
            partition.part_count(),
            partition.vertex_count(),
            nd.node_count()
        ));
    }
    let part_of = partition.assignment().to_vec();
    for (v, w) in g.edges() {
        let (x, y) = (part_of[v], part_of[w]);
        if !nd.is_ancestor(x, y) && !nd.is_ancestor(y, x) {
            return malformed(format!(
                "edge ({v}, {w}) joins parts {x} and {y}, which the tree does not relate"
            ));
        }
    }

    // w ∈ F_x exactly for the nodes x on the way up from part(v) that are
    // not ancestors of part(w), for each edge vw.
    let mut f: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nd.node_count()];
    for (a, b) in g.edges() {
        for (v, w) in [(a, b), (b, a)] {
            let target = part_of[w];
            let mut x = Some(part_of[v]);
            while let Some(y) = x {
                if nd.is_ancestor(y, target) {
                    break;
                }
                f[y].insert(w);
                x = nd.parent(y);
            }
        }
    }
    let f: Vec<Vec<usize>> = f.into_iter().map(|s| s.into_iter().collect()).collect();
    let witnesses: Vec<Vec<usize>> = f
        .iter()
        .map(|fx| {
            let parts: BTreeSet<usize> = fx.iter().map(|&w| part_of[w]).collect();
            parts.into_iter().collect()
        })
        .collect();
    let t = nd.width();

    // The checks materialize V_x by walking the subtree, which is a second
    // route to the membership test used above.
    let mut checks = HierarchyChecks {
        y1: true,
        y2: true,
        y3: true,
        y4: true,
        y5: true,
    };
    let mut mark = vec![usize::MAX; n];
    for x in 0..nd.node_count() {
        let mut vx: Vec<usize> = Vec::new();
        for y in nd.subtree(x) {
            vx.extend_from_slice(partition.part(y));
        }
        for &v in &vx {
            mark[v] = x;
        }
        let in_f = |w: usize| f[x].binary_search(&w).is_ok();
        for &v in &vx {
            for &w in g.neighbors(v) {
                if mark[w] != x && !in_f(w) {
                    checks.y1 = false;
                }
            }
        }
        for &w in &f[x] {
            if mark[w] == x || !g.neighbors(w).iter().any(|&v| mark[v] == x) {
                checks.y1 = false;
            }
        }
        if witnesses[x].len() > t
            || witnesses[x]
                .iter()
                .any(|&a| a == x || !nd.is_ancestor(a, x))
        {
            checks.y2 = false;
        }
        if partition.part(x).iter().any(|&v| mark[v] != x) {
            checks.y3 = false;
        }
        if let Some(p) = nd.parent(x) {
            if vx.iter().any(|&v| !nd.is_ancestor(p, part_of[v])) {
                checks.y4 = false;
            }
            let in_np = |w: usize| nd.is_ancestor(p, part_of[w]) || f[p].binary_search(&w).is_ok();
            if f[x].iter().any(|&w| !in_np(w)) {
                checks.y5 = false;
            }
        }
    }
    Ok(HierarchySets {
        part_of,
        f,
        witnesses,
        checks,
    })
}

/// [`hierarchy_unchecked`] that turns a failed property into a consistency
/// error naming it.
pub fn hierarchy(
    g: &Graph,
    partition: &HPartition,
    nd: &NormalizedDecomposition,
) -> Result<HierarchySets> {
    let h = hierarchy_unchecked(g, partition, nd)?;
    match h.checks.first_failure() {
        Some(claim) => Err(consistency(claim, "hierarchy property violated")),
        None => Ok(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TreeDecomposition;
    use crate::lift::normalize;

    /// P4 with singleton parts and the path decomposition {0,1},{1,2},{2,3}
    /// rooted at the first bag. The root bag is subdivided, giving the chain
    /// 1 -> 0 -> 2 -> 3.
    fn p4() -> (Graph, HPartition, NormalizedDecomposition) {
        let g = Graph::path(4);
        let tree = Graph::path(3);
        let td = TreeDecomposition::new(tree, vec![vec![0, 1], vec![1, 2], vec![2, 3]], Some(0))
            .unwrap();
        let nd = normalize(&g, &td).unwrap();
        (g, HPartition::singletons(4), nd)
    }

    #[test]
    fn path_gives_suffix_sets() {
        let (g, p, nd) = p4();
        assert_eq!(nd.root(), Some(1));
        assert_eq!(nd.parent(0), Some(1));
        assert_eq!(nd.parent(2), Some(0));
        assert_eq!(nd.parent(3), Some(2));
        let h = hierarchy(&g, &p, &nd).unwrap();
        assert_eq!(h.v_set(&nd, 1), vec![0, 1, 2, 3]);
        assert_eq!(h.v_set(&nd, 0), vec![0, 2, 3]);
        assert_eq!(h.f_set(0), &[1]);
        assert_eq!(h.v_set(&nd, 2), vec![2, 3]);
        assert_eq!(h.f_set(2), &[1]);
        assert_eq!(h.f_set(3), &[2]);
        assert!(h.f_set(1).is_empty());
        assert_eq!(h.witnesses[3], vec![2]);
        assert_eq!(h.n_set(&nd, 3), vec![2, 3]);
    }

    #[test]
    fn one_part() {
        let g = Graph::cycle(5);
        let p = HPartition::from_assignment(vec![0; 5]);
        let nd = normalize(&Graph::new(1), &TreeDecomposition::trivial(1)).unwrap();
        let h = hierarchy(&g, &p, &nd).unwrap();
        assert_eq!(h.v_set(&nd, 0), vec![0, 1, 2, 3, 4]);
        assert!(h.f_set(0).is_empty());
    }

    #[test]
    fn unrelated_parts_are_rejected() {
        let g = Graph::path(2);
        let nd = NormalizedDecomposition::from_parents(
            vec![None, Some(0), Some(0)],
            vec![vec![0], vec![1], vec![2]],
        )
        .unwrap();
        let p = HPartition::from_assignment(vec![1, 2, 0]);
        let g3 = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(hierarchy(&g3, &p, &nd).is_err());
        assert!(hierarchy(&g, &HPartition::singletons(2), &nd).is_err());
    }
}
