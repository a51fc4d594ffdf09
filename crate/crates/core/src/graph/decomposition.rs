use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{malformed, Result};

/// A tree decomposition: a tree on nodes `0..bags.len()` with a bag per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TdJson", try_from = "TdJson")]
pub struct TreeDecomposition {
    tree: Graph,
    bags: Vec<Vec<usize>>,
    root: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct TdJson {
    bags: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<usize>,
}

impl From<TreeDecomposition> for TdJson {
    fn from(td: TreeDecomposition) -> Self {
        TdJson {
            edges: td.tree.edges().map(|(a, b)| [a, b]).collect(),
            bags: td.bags,
            root: td.root,
        }
    }
}

impl TryFrom<TdJson> for TreeDecomposition {
    type Error = crate::Error;

    fn try_from(j: TdJson) -> Result<Self> {
        let tree = Graph::from_edges(j.bags.len(), j.edges.iter().map(|e| (e[0], e[1])))?;
        TreeDecomposition::new(tree, j.bags, j.root)
    }
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated. The tree shape is checked by
    /// [`validate_tree_decomposition`], not here.
    pub fn new(tree: Graph, mut bags: Vec<Vec<usize>>, root: Option<usize>) -> Result<Self> {
        if tree.vertex_count() != bags.len() {
            return malformed(format!(
                "tree has {} nodes but {} bags were given",
                tree.vertex_count(),
                bags.len()
            ));
        }
        if root.is_some_and(|r| r >= bags.len()) {
            return malformed("root is not a tree node");
        }
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        Ok(TreeDecomposition { tree, bags, root })
    }

    /// Decomposition with a single bag holding `0..n`.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            tree: Graph::new(1),
            bags: vec![(0..n).collect()],
            root: Some(0),
        }
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[usize] {
        &self.bags[node]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max bag size minus one (zero for decompositions with empty bags only).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TdViolation {
    NotATree,
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    DisconnectedTrace(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TdValidation {
    pub valid: bool,
    pub width: usize,
    pub violations: Vec<TdViolation>,
}

/// Checks the tree shape, that every vertex and edge is covered by a bag,
/// and that the nodes holding each vertex induce a connected subtree.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> TdValidation {
    let mut violations = Vec::new();
    let t = td.tree();
    let nodes = td.node_count();
    if nodes == 0 || t.edge_count() + 1 != nodes || !t.is_connected() {
        violations.push(TdViolation::NotATree);
    }
    let n = g.vertex_count();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(TdViolation::VertexOutOfRange { node: x, vertex: v });
            } else {
                holders[v].push(x);
            }
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            violations.push(TdViolation::VertexUncovered(v));
        }
    }
    for (u, v) in g.edges() {
        let covered = holders[u]
            .iter()
            .any(|&x| td.bag(x).binary_search(&v).is_ok());
        if !covered {
            violations.push(TdViolation::EdgeUncovered(u, v));
        }
    }
    // Connectivity of each trace: in a forest, a node set is connected iff
    // (#nodes) - (#tree edges inside) == 1.
    let mut mark = vec![usize::MAX; nodes];
    for (v, hs) in holders.iter().enumerate() {
        if hs.len() <= 1 {
            continue;
        }
        for &x in hs {
            mark[x] = v;
        }
        let inner: usize = hs
            .iter()
            .map(|&x| {
                t.neighbors(x)
                    .iter()
                    .filter(|&&y| y > x && mark[y] == v)
                    .count()
            })
            .sum();
        if hs.len() != inner + 1 {
            violations.push(TdViolation::DisconnectedTrace(v));
        }
    }
    TdValidation {
        valid: violations.is_empty(),
        width: td.width(),
        violations,
    }
}
