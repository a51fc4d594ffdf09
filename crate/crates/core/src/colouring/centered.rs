use std::collections::{BTreeSet, HashMap};

use super::{Colouring, ProductColouring};
use crate::bounds::binomial_usize;
use crate::error::{malformed, Error, Result};
use crate::graph::{min_fill_order, Graph, HPartition, Layering};

/// Default vertex cap for the exhaustive p-centered checkers.
pub const DEFAULT_CHECKER_CAP: usize = 18;
/// Default vertex cap for the exact χ_p search.
pub const DEFAULT_CHI_CAP: usize = 12;

/// Both checkers keep vertex sets in a `u64`.
const MASK_LIMIT: usize = 64;
/// Subset enumeration visits `2^n` masks.
const SUBSET_LIMIT: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiMode {
    Exact,
    Heuristic,
}

/// `C(p + t, t)`, the number of colours a width-`t` decomposition allows.
pub fn centered_cap(p: usize, t: usize) -> usize {
    binomial_usize(p + t, t)
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn check_sizes(g: &Graph, c: &Colouring, cap: usize, limit: usize) -> Result<()> {
    let n = g.vertex_count();
    if c.len() != n {
        return malformed(format!(
            "colouring covers {} vertices, graph has {n}",
            c.len()
        ));
    }
    if n > cap.min(limit) {
        return Err(Error::SizeLimit(format!(
            "exhaustive check on {n} vertices exceeds the cap of {}",
            cap.min(limit)
        )));
    }
    Ok(())
}

/// Grows connected sets containing a fixed root. Each set is produced once:
/// candidates are tried in order and a skipped candidate stays excluded for
/// the rest of that branch. Sets with more than `p` colours are pruned since
/// supersets cannot have fewer.
struct Expander<'a> {
    adj: &'a [u64],
    colour: &'a [usize],
    allowed: u64,
    p: usize,
    counts: HashMap<usize, usize>,
    distinct: usize,
    ones: usize,
}

impl Expander<'_> {
    fn add(&mut self, v: usize) {
        let c = self.counts.entry(self.colour[v]).or_insert(0);
        *c += 1;
        match *c {
            1 => {
                self.distinct += 1;
                self.ones += 1;
            }
            2 => self.ones -= 1,
            _ => {}
        }
    }

    fn remove(&mut self, v: usize) {
        let c = self.counts.get_mut(&self.colour[v]).unwrap();
        *c -= 1;
        match *c {
            0 => {
                self.distinct -= 1;
                self.ones -= 1;
            }
            1 => self.ones += 1,
            _ => {}
        }
    }

    /// Returns a set with at most `p` colours and no unique colour.
    fn from_root(&mut self, root: usize, excluded: u64) -> Option<u64> {
        self.add(root);
        let set = 1u64 << root;
        let excluded = excluded | set;
        let found = self.grow(set, self.adj[root] & self.allowed & !excluded, excluded);
        self.remove(root);
        found
    }

    fn grow(&mut self, set: u64, mut cand: u64, mut excluded: u64) -> Option<u64> {
        if self.distinct <= self.p && self.ones == 0 {
            return Some(set);
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            let bit = 1u64 << w;
            cand &= !bit;
            excluded |= bit;
            self.add(w);
            if self.distinct <= self.p {
                let next = cand | (self.adj[w] & self.allowed & !excluded);
                if let Some(x) = self.grow(set | bit, next, excluded) {
                    self.remove(w);
                    return Some(x);
                }
            }
            self.remove(w);
        }
        None
    }
}

/// Looks for a connected vertex set with at most `p` colours and no vertex
/// of unique colour, by growing connected sets from each root over vertices
/// of larger id. Returns the sorted witness, or `None` if `c` is p-centered.
pub fn check_p_centered(
    g: &Graph,
    p: usize,
    c: &Colouring,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    check_sizes(g, c, cap, MASK_LIMIT)?;
    let n = g.vertex_count();
    let adj = adjacency_masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut ex = Expander {
        adj: &adj,
        colour: c.as_slice(),
        allowed: all,
        p,
        counts: HashMap::new(),
        distinct: 0,
        ones: 0,
    };
    for root in 0..n {
        let below = (1u64 << root) - 1;
        if let Some(x) = ex.from_root(root, below) {
            return Ok(Some(mask_to_vec(x)));
        }
    }
    Ok(None)
}

/// Same question as [`check_p_centered`], answered by enumerating every
/// vertex subset and testing connectivity directly.
pub fn check_p_centered_subsets(
    g: &Graph,
    p: usize,
    c: &Colouring,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    check_sizes(g, c, cap, SUBSET_LIMIT)?;
    let n = g.vertex_count();
    let adj = adjacency_masks(g);
    for mask in 1u64..(1u64 << n) {
        let start = mask & mask.wrapping_neg();
        let mut reach = start;
        loop {
            let mut next = reach;
            for v in mask_to_vec(reach) {
                next |= adj[v] & mask;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach != mask {
            continue;
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for v in mask_to_vec(mask) {
            *counts.entry(c.colour(v)).or_insert(0) += 1;
        }
        if counts.len() <= p && counts.values().all(|&k| k >= 2) {
            return Ok(Some(mask_to_vec(mask)));
        }
    }
    Ok(None)
}

/// Colours each vertex by its depth in the elimination forest of a min-fill
/// order. Every edge of the filled graph joins an ancestor to a descendant,
/// so the shallowest vertex of a connected set is unique and so is its
/// colour: the result is p-centered for every `p`.
fn elimination_depth_colouring(g: &Graph) -> (Colouring, Vec<usize>) {
    let n = g.vertex_count();
    let order = min_fill_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut parent = vec![None; n];
    for &v in &order {
        let later: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        parent[v] = later.iter().copied().min_by_key(|&w| pos[w]);
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let mut depth = vec![0; n];
    for &v in order.iter().rev() {
        depth[v] = parent[v].map_or(0, |u: usize| depth[u] + 1);
    }
    (Colouring::new(depth), order)
}

/// True if some connected set through `v` inside `allowed` violates the
/// p-centered condition under the partial colouring `colour`.
fn violates_through(adj: &[u64], colour: &[usize], allowed: u64, p: usize, v: usize) -> bool {
    let mut ex = Expander {
        adj,
        colour,
        allowed,
        p,
        counts: HashMap::new(),
        distinct: 0,
        ones: 0,
    };
    ex.from_root(v, 0).is_some()
}

/// Colours vertices in `order`, each with the smallest colour that keeps
/// every connected set of coloured vertices valid. A set is examined when
/// its last vertex is coloured, so the result is p-centered.
fn greedy_colouring(g: &Graph, p: usize, order: &[usize]) -> Colouring {
    let adj = adjacency_masks(g);
    let n = g.vertex_count();
    let mut colour = vec![usize::MAX; n];
    let mut coloured = 0u64;
    let mut used = 0;
    for &v in order {
        coloured |= 1 << v;
        for c in 0..=used {
            colour[v] = c;
            if !violates_through(&adj, &colour, coloured, p, v) {
                break;
            }
        }
        used = used.max(colour[v] + 1);
    }
    Colouring::new(colour)
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.vertex_count());
    for comp in g.components() {
        let dist = g.bfs_distances(comp[0]);
        let mut c = comp.clone();
        c.sort_by_key(|&v| (dist[v], v));
        order.extend(c);
    }
    order
}

/// Backtracking search for a p-centered colouring with at most `colours`
/// colours. Vertices are coloured in `order`; a new vertex uses at most one
/// colour beyond those already used.
fn search(
    adj: &[u64],
    p: usize,
    order: &[usize],
    i: usize,
    colours: usize,
    used: usize,
    colour: &mut Vec<usize>,
    coloured: u64,
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let coloured = coloured | 1 << v;
    for c in 0..(used + 1).min(colours) {
        colour[v] = c;
        if !violates_through(adj, colour, coloured, p, v)
            && search(
                adj,
                p,
                order,
                i + 1,
                colours,
                used.max(c + 1),
                colour,
                coloured,
            )
        {
            return true;
        }
    }
    colour[v] = usize::MAX;
    false
}

/// A p-centered colouring with few colours.
///
/// Heuristic mode takes the best of the elimination-depth colouring and
/// greedy passes in reverse elimination order and in BFS order (greedy needs
/// at most 64 vertices). Up to [`DEFAULT_CHECKER_CAP`] vertices the result is
/// validated, and an invalid one falls back to the rainbow colouring. Exact mode starts from the heuristic count
/// and lowers it while a colouring still exists, so the result is optimal;
/// it is limited to `cap` vertices.
pub fn chi_p_small(g: &Graph, p: usize, mode: ChiMode, cap: usize) -> Result<Colouring> {
    let n = g.vertex_count();
    if mode == ChiMode::Exact && n > cap.min(MASK_LIMIT) {
        return Err(Error::SizeLimit(format!(
            "exact χ_p on {n} vertices exceeds the cap of {}",
            cap.min(MASK_LIMIT)
        )));
    }
    if n == 0 {
        return Ok(Colouring::new(Vec::new()));
    }
    let (depth, order) = elimination_depth_colouring(g);
    let mut best = depth;
    if n <= MASK_LIMIT {
        let reversed: Vec<usize> = order.iter().rev().copied().collect();
        for greedy in [
            greedy_colouring(g, p, &reversed),
            greedy_colouring(g, p, &bfs_order(g)),
        ] {
            if greedy.colour_count() < best.colour_count() {
                best = greedy;
            }
        }
    }
    if n <= DEFAULT_CHECKER_CAP {
        if check_p_centered(g, p, &best, DEFAULT_CHECKER_CAP)?.is_some() {
            best = Colouring::rainbow(n);
        }
    }
    if mode == ChiMode::Heuristic {
        return Ok(best);
    }
    let adj = adjacency_masks(g);
    let order = bfs_order(g);
    let mut count = best.colour_count();
    while count > 1 {
        let mut colour = vec![usize::MAX; n];
        if !search(&adj, p, &order, 0, count - 1, 0, &mut colour, 0) {
            break;
        }
        best = Colouring::new(colour);
        count = best.colour_count();
    }
    if let Some(w) = check_p_centered(g, p, &best, MASK_LIMIT)? {
        return Err(crate::error::consistency(
            "chi_p_valid",
            format!("search produced a colouring violated on {w:?}"),
        ));
    }
    Ok(best)
}

/// The product colouring of `g` from a partition whose quotient is coloured
/// by `gamma_h` (indexed by part id) and a layering of width at most `ell`:
/// `α` numbers the vertices of each part/layer cell from 1 by ascending id,
/// `β` is the layer index modulo `p + 1`, and `γ` is the part's colour plus 1.
pub fn lift_p_centered(
    g: &Graph,
    partition: &HPartition,
    layering: &Layering,
    ell: usize,
    p: usize,
    gamma_h: &Colouring,
) -> Result<ProductColouring> {
    let n = g.vertex_count();
    if partition.vertex_count() != n || layering.vertex_count() != n {
        return malformed(format!(
            "partition covers {} and layering {} vertices, graph has {n}",
            partition.vertex_count(),
            layering.vertex_count()
        ));
    }
    if gamma_h.len() != partition.part_count() {
        return malformed(format!(
            "quotient colouring covers {} parts, partition has {}",
            gamma_h.len(),
            partition.part_count()
        ));
    }
    let mut next_alpha: HashMap<(usize, usize), usize> = HashMap::new();
    let mut triples = Vec::with_capacity(n);
    for v in 0..n {
        let x = partition.part_of(v);
        let layer = layering.layer_of(v);
        let a = next_alpha.entry((x, layer)).or_insert(0);
        *a += 1;
        if *a > ell {
            return Err(Error::Width(format!(
                "part {x} meets layer {layer} in more than {ell} vertices"
            )));
        }
        triples.push([*a, layer % (p + 1), gamma_h.colour(x) + 1]);
    }
    Ok(ProductColouring { triples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(g: &Graph, p: usize, c: &Colouring) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
        (
            check_p_centered(g, p, c, 18).unwrap(),
            check_p_centered_subsets(g, p, c, 18).unwrap(),
        )
    }

    #[test]
    fn rainbow_is_valid_for_every_p() {
        let g = Graph::complete(5);
        for p in 0..6 {
            assert_eq!(both(&g, p, &Colouring::rainbow(5)), (None, None));
        }
    }

    #[test]
    fn constant_k2_has_the_edge_as_witness() {
        let g = Graph::complete(2);
        let c = Colouring::new(vec![0, 0]);
        assert_eq!(both(&g, 1, &c), (Some(vec![0, 1]), Some(vec![0, 1])));
        assert_eq!(both(&g, 0, &c), (None, None));
    }

    #[test]
    fn checkers_respect_caps_and_sizes() {
        let g = Graph::path(20);
        let c = Colouring::rainbow(20);
        assert!(matches!(
            check_p_centered(&g, 1, &c, 18),
            Err(Error::SizeLimit(_))
        ));
        assert!(check_p_centered(&g, 1, &c, 20).unwrap().is_none());
        assert!(check_p_centered(&Graph::path(3), 1, &c, 18).is_err());
    }

    #[test]
    fn lifted_p4_example() {
        // Parts {0,1},{2,3}; layers {0,2},{1,3}; quotient K2 coloured 0,1.
        let g = Graph::path(4);
        let part = HPartition::from_assignment(vec![0, 0, 1, 1]);
        let layers = Layering::from_layer_of(vec![0, 1, 0, 1]);
        let gamma = Colouring::new(vec![0, 1]);
        assert!(check_p_centered(&Graph::path(2), 2, &gamma, 18)
            .unwrap()
            .is_none());
        let c = lift_p_centered(&g, &part, &layers, 1, 2, &gamma).unwrap();
        assert_eq!(c.triples, vec![[1, 0, 1], [1, 1, 1], [1, 0, 2], [1, 1, 2]]);
        assert!(c.colour_count() <= 6);
        assert_eq!(both(&g, 2, &c.to_colouring()), (None, None));
        assert!(matches!(
            lift_p_centered(
                &g,
                &part,
                &Layering::from_layer_of(vec![0; 4]),
                1,
                2,
                &gamma
            ),
            Err(Error::Width(_))
        ));
    }

    #[test]
    fn singleton_lift_copies_the_quotient_colour() {
        let g = Graph::cycle(4);
        let gamma = Colouring::new(vec![0, 1, 0, 2]);
        let c = lift_p_centered(
            &g,
            &HPartition::singletons(4),
            &Layering::from_layer_of(vec![0; 4]),
            1,
            1,
            &gamma,
        )
        .unwrap();
        assert_eq!(c.triples[3], [1, 0, 3]);
    }

    #[test]
    fn exact_small_values() {
        let k3 = chi_p_small(&Graph::complete(3), 1, ChiMode::Exact, 12).unwrap();
        assert_eq!(k3.colour_count(), 3);
        let one = chi_p_small(&Graph::new(1), 4, ChiMode::Exact, 12).unwrap();
        assert_eq!(one.colour_count(), 1);
        // P4 with p = 2: two colours always leave a repeated pair, and the
        // colouring 0,1,2,0 shows three suffice.
        let p4 = chi_p_small(&Graph::path(4), 2, ChiMode::Exact, 12).unwrap();
        assert_eq!(p4.colour_count(), 3);
        assert!(p4.colour_count() <= centered_cap(2, 1));
        assert!(matches!(
            chi_p_small(&Graph::path(13), 1, ChiMode::Exact, 12),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn heuristic_is_valid_on_larger_graphs() {
        let g = Graph::cycle(40);
        let c = chi_p_small(&g, 2, ChiMode::Heuristic, 12).unwrap();
        assert!(c.colour_count() < 40);
        let h = chi_p_small(&Graph::cycle(9), 2, ChiMode::Heuristic, 12).unwrap();
        assert!(check_p_centered(&Graph::cycle(9), 2, &h, 18)
            .unwrap()
            .is_none());
    }
}
