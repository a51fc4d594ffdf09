use serde::Serialize;

use super::{hierarchy_unchecked, normalize, HierarchyChecks, NormalizedDecomposition};
use crate::bounds::binomial_usize;
use crate::error::{consistency, malformed, Error, Result};
use crate::graph::{
    embed_into_product, layered_width, validate_layering, validate_tree_decomposition, Graph,
    HPartition, Layering, TreeDecomposition,
};
use crate::shortcut::{apply_shortcuts, validate_shortcuts, ShortcutSystem};

/// Per-claim outcome of a lift. Every field must hold for a correct run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftClaims {
    pub y1: bool,
    pub y2: bool,
    pub y3: bool,
    pub y4: bool,
    pub y5: bool,
    /// Each vertex has a unique root-most node it participates in, and that
    /// node is an ancestor of all others.
    pub x_v_ancestor: bool,
    /// `S_x ⊆ V_x` for every node.
    pub s_subset: bool,
    /// The ends of every edge of `J` are related by ancestry.
    pub i_ancestor: bool,
    pub fine_width: bool,
    pub coarse_width: bool,
    pub coarse_layering_valid: bool,
    pub decomposition_valid: bool,
    pub bag_size: bool,
    /// `G^P` embeds in `J ⊠ P ⊠ K_w` under the lifted partition and the
    /// coarse layering.
    pub product_embedding: bool,
}

impl LiftClaims {
    pub fn list(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("y1", self.y1),
            ("y2", self.y2),
            ("y3", self.y3),
            ("y4", self.y4),
            ("y5", self.y5),
            ("x-v-ancestor", self.x_v_ancestor),
            ("s-subset", self.s_subset),
            ("i-ancestor", self.i_ancestor),
            ("fine-width", self.fine_width),
            ("coarse-width", self.coarse_width),
            ("coarse-layering", self.coarse_layering_valid),
            ("decomposition", self.decomposition_valid),
            ("bag-size", self.bag_size),
            ("product-embedding", self.product_embedding),
        ]
    }

    pub fn all(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.list()
            .into_iter()
            .find(|&(_, ok)| !ok)
            .map(|(name, _)| name)
    }

    fn from_hierarchy(h: HierarchyChecks) -> Self {
        LiftClaims {
            y1: h.y1,
            y2: h.y2,
            y3: h.y3,
            y4: h.y4,
            y5: h.y5,
            ..Default::default()
        }
    }
}

/// The lifted partition of `G^P` and everything measured about it.
#[derive(Clone, Debug, Serialize)]
pub struct LiftResult {
    /// `G^P`.
    pub shortcut_graph: Graph,
    /// Part `x` is `S_x`, the vertices anchored at tree node `x`.
    pub partition: HPartition,
    pub anchors: Vec<usize>,
    pub normalized: NormalizedDecomposition,
    /// Quotient of `G^P` by the lifted partition; vertex `i` is tree node
    /// `j_parts[i]`.
    pub j: Graph,
    pub j_parts: Vec<usize>,
    /// Tree decomposition of `j` over the normalized tree.
    pub decomposition: TreeDecomposition,
    pub layering: Layering,
    pub coarse_layering: Layering,
    /// Path length and load used in the bounds (each at least 1).
    pub k: usize,
    pub d: usize,
    /// Layered width of the input partition.
    pub ell: usize,
    /// Width of the normalized decomposition.
    pub t: usize,
    pub fine_width: usize,
    pub coarse_width: usize,
    pub max_bag: usize,
    /// `dℓ(k² + 3)`.
    pub fine_cap: usize,
    /// `dℓ(k³ + 3k)`.
    pub coarse_cap: usize,
    /// `C(k + t, t)`.
    pub bag_cap: usize,
    pub claims: LiftClaims,
}

/// Vertices that share a path of the system with `v`, reduced to `v` itself
/// plus the internal vertices of every path through `v`.
fn z_set(v: usize, paths: &[Vec<usize>], through: &[Vec<usize>]) -> Vec<usize> {
    let mut z = vec![v];
    for &i in &through[v] {
        let p = &paths[i];
        z.extend_from_slice(&p[1..p.len() - 1]);
    }
    z.sort_unstable();
    z.dedup();
    z
}

fn paths_through(n: usize, paths: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut through = vec![Vec::new(); n];
    for (i, p) in paths.iter().enumerate() {
        for &v in p {
            through[v].push(i);
        }
    }
    through
}

/// The anchor of every vertex plus whether each anchor was the unique
/// root-most participating node and an ancestor of all of them.
fn anchors_with_check(
    system: &ShortcutSystem,
    partition: &HPartition,
    nd: &NormalizedDecomposition,
) -> (Vec<usize>, bool) {
    let n = system.base.vertex_count();
    let paths = &system.paths;
    let through = paths_through(n, paths);
    let mut ok = true;
    let anchors = (0..n)
        .map(|v| {
            let mut parts: Vec<usize> = z_set(v, paths, &through)
                .iter()
                .map(|&w| partition.part_of(w))
                .collect();
            parts.sort_unstable();
            parts.dedup();
            let best = parts
                .iter()
                .copied()
                .min_by_key(|&x| (nd.depth(x), x))
                .unwrap();
            let top = parts
                .iter()
                .filter(|&&x| nd.depth(x) == nd.depth(best))
                .count();
            if top != 1 || parts.iter().any(|&x| !nd.is_ancestor(best, x)) {
                ok = false;
            }
            best
        })
        .collect();
    (anchors, ok)
}

/// Anchor `a(v)` of every vertex: the root-most tree node whose part meets
/// `v` or an internal vertex of a path through `v`. Length-1 paths have no
/// internal vertices, so edges of `G` need not be listed in the system.
pub fn anchors(
    system: &ShortcutSystem,
    partition: &HPartition,
    nd: &NormalizedDecomposition,
) -> Result<Vec<usize>> {
    check_inputs(system, partition, nd)?;
    let (a, ok) = anchors_with_check(system, partition, nd);
    if !ok {
        return Err(consistency(
            "x-v-ancestor",
            "participating nodes have no common root-most ancestor",
        ));
    }
    Ok(a)
}

fn check_inputs(
    system: &ShortcutSystem,
    partition: &HPartition,
    nd: &NormalizedDecomposition,
) -> Result<()> {
    let n = system.base.vertex_count();
    if partition.vertex_count() != n {
        return malformed(format!(
            "partition covers {} vertices, graph has {n}",
            partition.vertex_count()
        ));
    }
    if partition.part_count() != nd.node_count() {
        return malformed(format!(
            "partition has {} parts but the decomposition has {} nodes",
            partition.part_count(),
            nd.node_count()
        ));
    }
    let v = validate_shortcuts(system);
    if let Some(&i) = v.violations.first() {
        return malformed(format!("shortcut {i} is not a path of the graph"));
    }
    if v.k_actual > system.declared_k || v.d_actual > system.declared_d {
        return malformed(format!(
            "system measures ({}, {}) but declares ({}, {})",
            v.k_actual, v.d_actual, system.declared_k, system.declared_d
        ));
    }
    Ok(())
}

/// Lifts an `H`-partition of `G` through a shortcut system to a
/// `J`-partition of `G^P`, recording every checked claim instead of failing
/// on it. Parts of `partition` are the nodes of `nd`.
///
/// `k` and `d` are the declared parameters, raised to at least 1. The coarse
/// layering groups `k` consecutive layers of `layering`.
pub fn lift_partition_unchecked(
    system: &ShortcutSystem,
    partition: &HPartition,
    layering: &Layering,
    nd: &NormalizedDecomposition,
) -> Result<LiftResult> {
    check_inputs(system, partition, nd)?;
    let g = &system.base;
    let n = g.vertex_count();
    if layering.vertex_count() != n {
        return malformed(format!(
            "layering covers {} vertices, graph has {n}",
            layering.vertex_count()
        ));
    }
    if let Some(&(u, v)) = validate_layering(g, layering)?.first() {
        return malformed(format!("edge ({u}, {v}) skips a layer"));
    }
    let hier = hierarchy_unchecked(g, partition, nd)?;
    let mut claims = LiftClaims::from_hierarchy(hier.checks);

    let k = system.declared_k.max(1);
    let d = system.declared_d.max(1);
    let ell = layered_width(partition, layering, None);
    let t = nd.width();

    let (anchors, unique) = anchors_with_check(system, partition, nd);
    claims.x_v_ancestor = unique;
    let s = HPartition::from_assignment_with_count(nd.node_count(), anchors.clone());
    claims.s_subset = (0..n).all(|v| hier.in_v(nd, anchors[v], v));

    let gp = apply_shortcuts(system);
    let q = s.quotient(&gp)?;
    let (j, j_parts) = (q.graph, q.part_ids);

    // C_x holds x (if S_x is non-empty) and every ancestor a joined in J to
    // a descendant of x, found by walking each J-edge up from its lower end.
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); nd.node_count()];
    for (i, &x) in j_parts.iter().enumerate() {
        bags[x].push(i);
    }
    claims.i_ancestor = true;
    for (a, b) in j.edges() {
        let (x, y) = (j_parts[a], j_parts[b]);
        let (high, low, hi) = if nd.is_ancestor(x, y) {
            (x, y, a)
        } else if nd.is_ancestor(y, x) {
            (y, x, b)
        } else {
            claims.i_ancestor = false;
            continue;
        };
        let mut z = low;
        while z != high {
            bags[z].push(hi);
            z = nd.parent(z).expect("walk stays below the ancestor");
        }
    }
    let decomposition = if nd.node_count() == 0 {
        TreeDecomposition::trivial(0)
    } else {
        TreeDecomposition::new(nd.tree(), bags, nd.root())?
    };
    claims.decomposition_valid = validate_tree_decomposition(&j, &decomposition).valid;
    let max_bag = decomposition.max_bag_size();
    let bag_cap = binomial_usize(k + t, t);
    claims.bag_size = max_bag <= bag_cap;

    let fine_width = layered_width(&s, layering, None);
    let fine_cap = d.saturating_mul(ell).saturating_mul(k * k + 3);
    claims.fine_width = fine_width <= fine_cap;
    let coarse_layering = layering.coarsen(k);
    let coarse_width = layered_width(&s, &coarse_layering, None);
    let coarse_cap = d.saturating_mul(ell).saturating_mul(k * k * k + 3 * k);
    claims.coarse_width = coarse_width <= coarse_cap;
    claims.coarse_layering_valid = validate_layering(&gp, &coarse_layering)?.is_empty();
    claims.product_embedding = embed_into_product(&gp, &s, &coarse_layering)?.is_valid();

    Ok(LiftResult {
        shortcut_graph: gp,
        partition: s,
        anchors,
        normalized: nd.clone(),
        j,
        j_parts,
        decomposition,
        layering: layering.clone(),
        coarse_layering,
        k,
        d,
        ell,
        t,
        fine_width,
        coarse_width,
        max_bag,
        fine_cap,
        coarse_cap,
        bag_cap,
        claims,
    })
}

/// [`lift_partition_unchecked`] that fails with a consistency error naming
/// the first claim that does not hold.
pub fn lift_partition(
    system: &ShortcutSystem,
    partition: &HPartition,
    layering: &Layering,
    nd: &NormalizedDecomposition,
) -> Result<LiftResult> {
    let r = lift_partition_unchecked(system, partition, layering, nd)?;
    match r.claims.first_failure() {
        Some(claim) => Err(consistency(
            claim,
            format!(
                "fine {}/{}, coarse {}/{}, bag {}/{}",
                r.fine_width, r.fine_cap, r.coarse_width, r.coarse_cap, r.max_bag, r.bag_cap
            ),
        )),
        None => Ok(r),
    }
}

/// `H` on the part ids of `partition`: parts are adjacent when an edge of
/// `g` joins them. Empty parts stay as isolated vertices.
pub fn part_graph(g: &Graph, partition: &HPartition) -> Graph {
    let mut h = Graph::new(partition.part_count());
    for (u, v) in g.edges() {
        let (x, y) = (partition.part_of(u), partition.part_of(v));
        if x != y {
            h.add_edge(x, y);
        }
    }
    h
}

/// Normalizes `td`, a tree decomposition of the part graph of `partition`,
/// and lifts. Parts missing from every bag (necessarily empty or isolated)
/// get a leaf bag of their own first.
pub fn lift_with_decomposition(
    system: &ShortcutSystem,
    partition: &HPartition,
    layering: &Layering,
    td: &TreeDecomposition,
) -> Result<LiftResult> {
    let h = part_graph(&system.base, partition);
    let td = cover_missing(&h, td)?;
    let nd = normalize(&h, &td)?;
    lift_partition(system, partition, layering, &nd)
}

/// Unchecked variant of [`lift_with_decomposition`].
pub fn lift_with_decomposition_unchecked(
    system: &ShortcutSystem,
    partition: &HPartition,
    layering: &Layering,
    td: &TreeDecomposition,
) -> Result<LiftResult> {
    let h = part_graph(&system.base, partition);
    let td = cover_missing(&h, td)?;
    let nd = normalize(&h, &td)?;
    lift_partition_unchecked(system, partition, layering, &nd)
}

fn cover_missing(h: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let n = h.vertex_count();
    let mut covered = vec![false; n];
    for bag in td.bags() {
        for &x in bag {
            if x >= n {
                return Err(Error::Malformed(format!("bag vertex {x} is not a part")));
            }
            covered[x] = true;
        }
    }
    if covered.iter().all(|&c| c) {
        return Ok(td.clone());
    }
    let mut tree = td.tree().clone();
    let mut bags = td.bags().to_vec();
    let anchor = td.root().unwrap_or(0);
    for x in (0..n).filter(|&x| !covered[x]) {
        if h.degree(x) > 0 {
            return malformed(format!("part {x} has neighbours but no bag"));
        }
        let node = tree.add_vertex();
        bags.push(vec![x]);
        if node > 0 {
            tree.add_edge(anchor, node);
        }
    }
    TreeDecomposition::new(tree, bags, td.root().or(Some(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::exact_treewidth;

    fn path_nd(n: usize) -> NormalizedDecomposition {
        // Root 0, chain 0 -> 1 -> ... with bags {i-1, i}.
        let parent = (0..n).map(|i| i.checked_sub(1)).collect();
        let bags = (0..n)
            .map(|i| if i == 0 { vec![0] } else { vec![i - 1, i] })
            .collect();
        NormalizedDecomposition::from_parents(parent, bags).unwrap()
    }

    #[test]
    fn anchors_on_p5_with_one_shortcut() {
        // a..e = 0..4, shortcut a-b-c, singleton parts, tree rooted at a.
        let s = ShortcutSystem::new(Graph::path(5), vec![vec![0, 1, 2]], 2, 1);
        let p = HPartition::singletons(5);
        let nd = path_nd(5);
        // Z(a) = {a, b}, Z(b) = {b}, Z(c) = {b, c}; the rest are alone.
        assert_eq!(anchors(&s, &p, &nd).unwrap(), vec![0, 1, 1, 3, 4]);
    }

    #[test]
    fn anchor_is_the_root_when_a_path_crosses_it() {
        // Tree rooted at c; shortcut a-c-e crosses the root part.
        let s = ShortcutSystem::new(Graph::path(5), vec![vec![1, 2, 3]], 2, 1);
        let p = HPartition::singletons(5);
        let parent = vec![Some(1), Some(2), None, Some(2), Some(3)];
        let bags = vec![vec![0, 1], vec![1, 2], vec![2], vec![2, 3], vec![3, 4]];
        let nd = NormalizedDecomposition::from_parents(parent, bags).unwrap();
        assert_eq!(anchors(&s, &p, &nd).unwrap(), vec![0, 2, 2, 2, 4]);
    }

    #[test]
    fn edge_only_system_keeps_parts() {
        let g = Graph::path(5);
        let s = ShortcutSystem::new(g, Vec::new(), 1, 0);
        let p = HPartition::singletons(5);
        let l = Layering::from_layer_of((0..5).collect());
        let r = lift_partition(&s, &p, &l, &path_nd(5)).unwrap();
        assert_eq!(r.anchors, vec![0, 1, 2, 3, 4]);
        assert_eq!((r.k, r.d, r.ell, r.t), (1, 1, 1, 1));
        assert_eq!(r.coarse_cap, 4);
        assert_eq!(r.bag_cap, 2);
        assert!(r.shortcut_graph.same_edges(&Graph::path(5)));
    }

    #[test]
    fn p5_square() {
        let s = ShortcutSystem::new(
            Graph::path(5),
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]],
            2,
            1,
        );
        let p = HPartition::singletons(5);
        let l = Layering::from_layer_of(vec![0; 5]);
        let r = lift_partition(&s, &p, &l, &path_nd(5)).unwrap();
        assert_eq!(r.fine_cap, 7);
        assert_eq!(r.coarse_cap, 14);
        assert_eq!(r.bag_cap, 3);
        assert!(r.max_bag <= 3);
        let tw = exact_treewidth(&r.j, 20).unwrap();
        assert!(tw.width <= 2);
        assert!(r.claims.all());
    }

    #[test]
    fn overloaded_system_is_rejected() {
        let s = ShortcutSystem::new(Graph::path(3), vec![vec![0, 1, 2], vec![2, 1, 0]], 2, 1);
        let p = HPartition::singletons(3);
        let l = Layering::from_layer_of(vec![0, 1, 2]);
        assert!(lift_partition(&s, &p, &l, &path_nd(3)).is_err());
    }

    #[test]
    fn missing_parts_get_leaf_bags() {
        let g = Graph::path(3);
        let s = ShortcutSystem::new(g, vec![vec![0, 1, 2]], 2, 1);
        let p = HPartition::new(3, vec![vec![0], vec![1, 2], vec![]]).unwrap();
        let td = TreeDecomposition::trivial(2);
        let l = Layering::from_layer_of(vec![0, 1, 2]);
        let r = lift_with_decomposition(&s, &p, &l, &td).unwrap();
        assert_eq!(r.normalized.node_count(), 3);
        assert!(r.claims.all());
    }
}
