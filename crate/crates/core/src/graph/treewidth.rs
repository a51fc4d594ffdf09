use std::collections::BTreeSet;

use super::{Graph, TreeDecomposition};
use crate::error::{Error, Result};

/// Default vertex cap for the exact subset dynamic program.
pub const DEFAULT_EXACT_CAP: usize = 20;
/// The exact program allocates one byte per vertex subset; beyond this the
/// table no longer fits comfortably in memory whatever the caller asks for.
const HARD_EXACT_LIMIT: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreewidthMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct TreewidthResult {
    /// Width of `decomposition`; equals the treewidth when `exact` is set.
    pub width: usize,
    pub decomposition: TreeDecomposition,
    /// A lower bound on the treewidth (the width itself in exact mode).
    pub lower_bound: usize,
    pub exact: bool,
}

pub fn treewidth(g: &Graph, mode: TreewidthMode, exact_cap: usize) -> Result<TreewidthResult> {
    match mode {
        TreewidthMode::Exact => exact_treewidth(g, exact_cap),
        TreewidthMode::Heuristic => {
            let order = min_fill_order(g);
            let decomposition = decomposition_from_order(g, &order);
            Ok(TreewidthResult {
                width: decomposition.width(),
                decomposition,
                lower_bound: degeneracy(g),
                exact: false,
            })
        }
    }
}

/// Minimum-width tree decomposition by dynamic programming over vertex
/// subsets: `TW(S) = min_{v∈S} max(TW(S−v), |Q(S−v, v)|)` where `Q(S, v)` is
/// the set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn exact_treewidth(g: &Graph, cap: usize) -> Result<TreewidthResult> {
    let n = g.vertex_count();
    if n > cap.min(HARD_EXACT_LIMIT) {
        return Err(Error::SizeLimit(format!(
            "exact treewidth on {n} vertices exceeds the cap of {}; use heuristic mode",
            cap.min(HARD_EXACT_LIMIT)
        )));
    }
    if n == 0 {
        return Ok(TreewidthResult {
            width: 0,
            decomposition: TreeDecomposition::trivial(0),
            lower_bound: 0,
            exact: true,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let upper = decomposition_from_order(g, &min_fill_order(g)).width();
    let ceiling = (upper + 1).min(u8::MAX as usize) as u8;

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut tw = vec![0u8; 1usize << n];
    for s in 1..=full {
        let mut best = ceiling;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let a = tw[without as usize];
            if a >= best {
                continue;
            }
            let q = reach_outside(&adj, without, v).count_ones() as u8;
            best = best.min(a.max(q));
        }
        tw[s as usize] = best;
    }
    let width = tw[full as usize] as usize;
    debug_assert!(width <= upper);

    // Recover an elimination order achieving `width`, last vertex first.
    let mut reversed = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        let mut chosen = None;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            if (tw[without as usize] as usize) <= width
                && reach_outside(&adj, without, v).count_ones() as usize <= width
            {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("subset table is inconsistent");
        reversed.push(v);
        s &= !(1 << v);
    }
    reversed.reverse();
    let decomposition = decomposition_from_order(g, &reversed);
    assert_eq!(
        decomposition.width(),
        width,
        "elimination order does not realise the optimum"
    );
    Ok(TreewidthResult {
        width,
        decomposition,
        lower_bound: width,
        exact: true,
    })
}

/// Vertices outside `s ∪ {v}` adjacent to the component of `v` in `G[s ∪ {v}]`.
fn reach_outside(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    let mut seen = 0u32;
    while frontier != 0 {
        let mut nb = 0u32;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            nb |= adj[u];
        }
        seen |= nb;
        frontier = nb & s & !comp;
        comp |= frontier;
    }
    seen & !s & !comp
}

/// Min-fill elimination order, ties broken by lowest vertex id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let fill_of = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut fill: Vec<usize> = (0..n).map(|v| fill_of(&adj, v)).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill[v], v))
            .unwrap();
        alive[v] = false;
        order.push(v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        let mut touched: BTreeSet<usize> = nb.iter().copied().collect();
        for &a in &nb {
            touched.extend(adj[a].iter().copied());
        }
        for u in touched {
            fill[u] = fill_of(&adj, u);
        }
    }
    order
}

/// Tree decomposition induced by eliminating vertices in `order`: the bag of
/// `v` is `v` plus its neighbours at elimination time, attached to the bag of
/// the earliest-eliminated of those neighbours.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "order must be a permutation");
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (j, &a) in later.iter().enumerate() {
            for &b in &later[j + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent[i] = later.iter().map(|&w| pos[w]).min();
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    // Bags with no parent are roots of separate trees; chain them together.
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    let mut tree = Graph::new(n);
    for i in 0..n {
        if let Some(p) = parent[i] {
            tree.add_edge(i, p);
        }
    }
    for w in roots.windows(2) {
        tree.add_edge(w[0], w[1]);
    }
    TreeDecomposition::new(tree, bags, roots.last().copied()).unwrap()
}

/// Degeneracy (max over the peeling order of the minimum degree), a lower
/// bound on treewidth.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut low = 0;
    for _ in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().unwrap();
        removed[v] = true;
        best = best.max(low);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        low = low.saturating_sub(1);
    }
    best
}
