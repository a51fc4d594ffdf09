use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{consistency, malformed, Result};
use crate::graph::{validate_tree_decomposition, Graph, TreeDecomposition};

/// A rooted tree decomposition of `H` whose nodes are the vertices of `H`.
///
/// Every vertex `x` lies in its own bag and the nodes whose bags contain `x`
/// form a subtree rooted at `x`. Consequently the ends of every edge of `H`
/// are in ancestor/descendant relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedDecomposition {
    parent: Vec<Option<usize>>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
    root: Option<usize>,
    bags: Vec<Vec<usize>>,
    #[serde(skip)]
    depth: Vec<usize>,
    #[serde(skip)]
    tin: Vec<usize>,
    #[serde(skip)]
    tout: Vec<usize>,
}

impl NormalizedDecomposition {
    /// Builds the rooted tree from a parent array and computes depths and
    /// Euler-tour intervals. Fails unless the parent array is a single tree.
    /// Bags are sorted but not otherwise checked; see
    /// [`NormalizedDecomposition::check`].
    pub fn from_parents(parent: Vec<Option<usize>>, mut bags: Vec<Vec<usize>>) -> Result<Self> {
        let n = parent.len();
        if bags.len() != n {
            return malformed(format!("{} bags for {n} nodes", bags.len()));
        }
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        let roots: Vec<usize> = (0..n).filter(|&x| parent[x].is_none()).collect();
        if n > 0 && roots.len() != 1 {
            return malformed(format!("expected one root, found {}", roots.len()));
        }
        let mut children = vec![Vec::new(); n];
        for (x, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return malformed(format!("parent {p} of node {x} is out of range"));
                }
                children[p].push(x);
            }
        }
        let root = roots.first().copied();
        let (mut depth, mut tin, mut tout) = (vec![0; n], vec![usize::MAX; n], vec![0; n]);
        let mut clock = 0;
        if let Some(r) = root {
            let mut stack = vec![(r, 0)];
            while let Some(&mut (x, ref mut next)) = stack.last_mut() {
                if *next == 0 {
                    tin[x] = clock;
                    clock += 1;
                }
                if let Some(&c) = children[x].get(*next) {
                    *next += 1;
                    depth[c] = depth[x] + 1;
                    stack.push((c, 0));
                } else {
                    tout[x] = clock;
                    stack.pop();
                }
            }
        }
        if clock != n {
            return malformed("parent array contains a cycle");
        }
        Ok(NormalizedDecomposition {
            parent,
            children,
            root,
            bags,
            depth,
            tin,
            tout,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn bag(&self, x: usize) -> &[usize] {
        &self.bags[x]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    /// True if `a` is `x` or lies on the path from `x` to the root.
    pub fn is_ancestor(&self, a: usize, x: usize) -> bool {
        self.tin[a] <= self.tin[x] && self.tout[x] <= self.tout[a]
    }

    /// Nodes of the subtree rooted at `x`, in preorder.
    pub fn subtree(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// The tree as an undirected graph on the same node ids.
    pub fn tree(&self) -> Graph {
        let mut t = Graph::new(self.node_count());
        for (x, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                t.add_edge(x, p);
            }
        }
        t
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        if self.node_count() == 0 {
            return TreeDecomposition::trivial(0);
        }
        TreeDecomposition::new(self.tree(), self.bags.clone(), self.root).expect("sizes agree")
    }

    /// Checks that this is a tree decomposition of `h` in which every vertex
    /// roots its own subtree, that the ends of every edge are related by
    /// ancestry, and that the deeper end of every edge has the other in its
    /// bag. Returns the name of the first failing property.
    pub fn check(&self, h: &Graph) -> std::result::Result<(), (&'static str, String)> {
        if h.vertex_count() != self.node_count() {
            return Err((
                "node-set",
                format!(
                    "{} nodes for {} vertices",
                    self.node_count(),
                    h.vertex_count()
                ),
            ));
        }
        let v = validate_tree_decomposition(h, &self.to_tree_decomposition());
        if !v.valid {
            return Err(("decomposition", format!("{:?}", v.violations)));
        }
        for x in 0..self.node_count() {
            if self.bags[x].binary_search(&x).is_err() {
                return Err(("T1", format!("vertex {x} is missing from its own bag")));
            }
            for &y in &self.bags[x] {
                if y != x && !self.is_ancestor(y, x) {
                    return Err(("T1", format!("bag {x} holds {y}, which is not an ancestor")));
                }
            }
        }
        for (x, y) in h.edges() {
            if !self.is_ancestor(x, y) && !self.is_ancestor(y, x) {
                return Err(("T2", format!("edge ({x}, {y}) joins unrelated nodes")));
            }
            let (deep, high) = if self.depth[x] > self.depth[y] {
                (x, y)
            } else {
                (y, x)
            };
            if self.bags[deep].binary_search(&high).is_err() {
                return Err(("deep-bag", format!("bag {deep} lacks its neighbour {high}")));
            }
        }
        Ok(())
    }
}

/// Turns a tree decomposition of `h` into one whose nodes are the vertices
/// of `h`, without increasing the width.
///
/// A root with an empty bag is added above the given root (node 0 if none).
/// Each vertex is mapped to the topmost node containing it; a node hit by
/// several vertices `x1 < ... < xm` gets a chain of new nodes above it with
/// bags `B \ {x1..xi}`, so the map becomes injective. Nodes hit by no vertex
/// are then contracted into their parents and the rest renamed after the
/// vertex that maps to them.
pub fn normalize(h: &Graph, td: &TreeDecomposition) -> Result<NormalizedDecomposition> {
    let n = h.vertex_count();
    let v = validate_tree_decomposition(h, td);
    if !v.valid {
        return malformed(format!(
            "input is not a tree decomposition: {:?}",
            v.violations
        ));
    }
    if n == 0 {
        return NormalizedDecomposition::from_parents(Vec::new(), Vec::new());
    }
    let m = td.node_count();
    let tree = td.tree();

    // Root the input tree below a new empty node `m`.
    let mut parent: Vec<Option<usize>> = vec![None; m + 1];
    let mut bags: Vec<Vec<usize>> = td.bags().to_vec();
    bags.push(Vec::new());
    let top = td.root().unwrap_or(0);
    parent[top] = Some(m);
    let mut order = vec![m];
    let mut seen = vec![false; m];
    seen[top] = true;
    let mut queue = VecDeque::from([top]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in tree.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }

    let mut first = vec![usize::MAX; n];
    for &a in &order {
        for &x in &bags[a] {
            if first[x] == usize::MAX {
                first[x] = a;
            }
        }
    }
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for (x, &a) in first.iter().enumerate() {
        preimages[a].push(x);
    }

    // Subdivide so that every node is the top of at most one vertex.
    let mut image = first.clone();
    for a in 0..=m {
        let pre = preimages[a].clone();
        let mut below = a;
        for i in 1..pre.len() {
            let bag: Vec<usize> = bags[a]
                .iter()
                .copied()
                .filter(|y| !pre[..i].contains(y))
                .collect();
            let node = bags.len();
            bags.push(bag);
            parent.push(parent[below]);
            parent[below] = Some(node);
            image[pre[i]] = node;
            below = node;
        }
    }
    let total = bags.len();
    let mut vertex_at = vec![usize::MAX; total];
    for (x, &a) in image.iter().enumerate() {
        vertex_at[a] = x;
    }

    // Contract nodes without a vertex. Top-level survivors other than the
    // first in BFS order hang below it; their ancestors all had empty bags,
    // so their own bags are singletons and the move is harmless.
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (x, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(x);
        }
    }
    let mut new_parent: Vec<Option<usize>> = vec![None; n];
    let mut new_bags: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut root: Option<usize> = None;
    let mut queue = VecDeque::from([(m, None::<usize>)]);
    while let Some((a, alive_above)) = queue.pop_front() {
        let mut here = alive_above;
        if vertex_at[a] != usize::MAX {
            let x = vertex_at[a];
            new_bags[x] = bags[a].clone();
            new_parent[x] = match alive_above {
                Some(p) => Some(p),
                None => match root {
                    None => {
                        root = Some(x);
                        None
                    }
                    Some(r) => Some(r),
                },
            };
            here = Some(x);
        }
        for &c in &children[a] {
            queue.push_back((c, here));
        }
    }
    let nd = NormalizedDecomposition::from_parents(new_parent, new_bags)?;
    if let Err((claim, detail)) = nd.check(h) {
        return Err(consistency(claim, detail));
    }
    if nd.width() > td.width() {
        return Err(consistency(
            "width",
            format!("width grew from {} to {}", td.width(), nd.width()),
        ));
    }
    Ok(nd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn td(n: usize, edges: &[(usize, usize)], bags: Vec<Vec<usize>>) -> TreeDecomposition {
        let tree = Graph::from_edges(n, edges.iter().copied()).unwrap();
        TreeDecomposition::new(tree, bags, Some(0)).unwrap()
    }

    #[test]
    fn single_vertex() {
        let h = Graph::new(1);
        let nd = normalize(&h, &TreeDecomposition::trivial(1)).unwrap();
        assert_eq!(nd.root(), Some(0));
        assert_eq!(nd.bag(0), &[0]);
    }

    #[test]
    fn path_of_three_with_two_bags() {
        // Bags {a,b} (root) and {b,c}: a and b both top out at the root, so
        // it is subdivided; the chain above it holds {b}.
        let h = Graph::path(3);
        let nd = normalize(&h, &td(2, &[(0, 1)], vec![vec![0, 1], vec![1, 2]])).unwrap();
        assert_eq!(nd.root(), Some(1));
        assert_eq!(nd.parent(0), Some(1));
        assert_eq!(nd.parent(2), Some(0));
        assert_eq!(nd.bag(1), &[1]);
        assert_eq!(nd.bag(0), &[0, 1]);
        assert_eq!(nd.bag(2), &[1, 2]);
        assert!(nd.is_ancestor(1, 0) && nd.is_ancestor(0, 2));
        assert!(nd.check(&h).is_ok());
    }

    #[test]
    fn k4_in_one_bag_becomes_a_chain() {
        let h = Graph::complete(4);
        let nd = normalize(&h, &TreeDecomposition::trivial(4)).unwrap();
        // Chain 3 -> 2 -> 1 -> 0 with bags {3}, {2,3}, {1,2,3}, {0,1,2,3}.
        assert_eq!(nd.root(), Some(3));
        for x in 0..3 {
            assert_eq!(nd.parent(x), Some(x + 1));
            assert_eq!(nd.bag(x).len(), 4 - x);
        }
        assert_eq!(nd.width(), 3);
        assert_eq!(nd.depth(0), 3);
    }

    #[test]
    fn isolated_vertices_hang_below_the_first_root() {
        // An empty root bag with leaves {0}, {1}, {2}: three top-level
        // survivors after contraction.
        let h = Graph::new(3);
        let t = td(
            4,
            &[(0, 1), (0, 2), (0, 3)],
            vec![vec![], vec![0], vec![1], vec![2]],
        );
        let nd = normalize(&h, &t).unwrap();
        assert_eq!(nd.root(), Some(0));
        assert_eq!(nd.parent(1), Some(0));
        assert_eq!(nd.parent(2), Some(0));
    }

    #[test]
    fn invalid_input_is_rejected() {
        let h = Graph::path(3);
        assert!(normalize(&h, &td(2, &[(0, 1)], vec![vec![0, 1], vec![2]])).is_err());
    }

    #[test]
    fn bad_parent_arrays() {
        assert!(
            NormalizedDecomposition::from_parents(vec![None, None], vec![vec![0], vec![1]])
                .is_err()
        );
        assert!(NormalizedDecomposition::from_parents(
            vec![Some(1), Some(0)],
            vec![vec![0], vec![1]]
        )
        .is_err());
    }
}
