use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Result};
use crate::graph::Graph;

/// A vertex order and a queue index per edge. Edges are keyed `(u, v)` with
/// `u < v`. Serialized as `{"order": [...], "queues": [[u, v, q], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QueueJson", from = "QueueJson")]
pub struct QueueLayout {
    pub order: Vec<usize>,
    pub queue_of: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct QueueJson {
    order: Vec<usize>,
    queues: Vec<[usize; 3]>,
}

impl From<QueueLayout> for QueueJson {
    fn from(q: QueueLayout) -> Self {
        QueueJson {
            order: q.order,
            queues: q
                .queue_of
                .into_iter()
                .map(|((u, v), i)| [u, v, i])
                .collect(),
        }
    }
}

impl From<QueueJson> for QueueLayout {
    fn from(j: QueueJson) -> Self {
        QueueLayout {
            order: j.order,
            queue_of: j
                .queues
                .into_iter()
                .map(|[u, v, i]| ((u.min(v), u.max(v)), i))
                .collect(),
        }
    }
}

impl QueueLayout {
    pub fn queue_count(&self) -> usize {
        self.queue_of.values().map(|&q| q + 1).max().unwrap_or(0)
    }
}

fn positions(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return malformed(format!(
            "order lists {} vertices, graph has {n}",
            order.len()
        ));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return malformed(format!("order is not a permutation (vertex {v})"));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Finds two edges of the same queue where one nests inside the other:
/// `a < c < d < b` in the order for edges `ab` and `cd`. Returns the pair
/// `(outer, inner)` or `None` if the layout is valid.
pub fn check_queue_layout(
    g: &Graph,
    q: &QueueLayout,
) -> Result<Option<((usize, usize), (usize, usize))>> {
    let pos = positions(g.vertex_count(), &q.order)?;
    let mut by_queue: BTreeMap<usize, Vec<(usize, usize, (usize, usize))>> = BTreeMap::new();
    for e in g.edges() {
        let Some(&i) = q.queue_of.get(&e) else {
            return malformed(format!("edge {e:?} has no queue"));
        };
        let (a, b) = (pos[e.0].min(pos[e.1]), pos[e.0].max(pos[e.1]));
        by_queue.entry(i).or_default().push((a, b, e));
    }
    if q.queue_of.len() != g.edge_count() {
        return malformed("queue assignment lists pairs that are not edges");
    }
    // Within one queue, sort by left end; sweep left ends in groups and keep
    // the edge with the largest right end seen at strictly smaller left ends.
    // An edge nests inside it exactly when its right end is strictly smaller.
    for edges in by_queue.values_mut() {
        edges.sort_unstable();
        let mut widest: Option<(usize, (usize, usize))> = None;
        let mut i = 0;
        while i < edges.len() {
            let mut j = i;
            while j < edges.len() && edges[j].0 == edges[i].0 {
                j += 1;
            }
            if let Some((right, outer)) = widest {
                if let Some(inner) = edges[i..j].iter().find(|e| e.1 < right) {
                    return Ok(Some((outer, inner.2)));
                }
            }
            for e in &edges[i..j] {
                if widest.is_none_or(|(r, _)| e.1 > r) {
                    widest = Some((e.1, e.2));
                }
            }
            i = j;
        }
    }
    Ok(None)
}

/// Assigns edges, sorted by left then right end in `order` (BFS order by
/// default), to the smallest queue in which they nest with nothing.
pub fn greedy_queue_layout(g: &Graph, order: Option<&[usize]>) -> Result<QueueLayout> {
    let n = g.vertex_count();
    let order = match order {
        Some(o) => o.to_vec(),
        None => bfs_order(g),
    };
    let pos = positions(n, &order)?;
    let mut edges: Vec<(usize, usize, (usize, usize))> = g
        .edges()
        .map(|e| (pos[e.0].min(pos[e.1]), pos[e.0].max(pos[e.1]), e))
        .collect();
    edges.sort_unstable();
    let mut queues: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut queue_of = BTreeMap::new();
    for (a, b, e) in edges {
        let nests = |&(c, d): &(usize, usize)| (c < a && b < d) || (a < c && d < b);
        let i = match queues.iter().position(|q| !q.iter().any(nests)) {
            Some(i) => i,
            None => {
                queues.push(Vec::new());
                queues.len() - 1
            }
        };
        queues[i].push((a, b));
        queue_of.insert(e, i);
    }
    Ok(QueueLayout { order, queue_of })
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}
