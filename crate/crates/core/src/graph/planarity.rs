//! Planarity testing by incremental path embedding (Demoucron, Malgrange and
//! Pertuiset), applied to each biconnected component.

use std::collections::VecDeque;

use super::Graph;

/// True if `g` has a crossing-free drawing in the plane.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|edges| block_is_planar(&edges))
}

/// Edge sets of the biconnected components (bridges form their own blocks).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        // Frames: (vertex, parent, next neighbour index).
        let mut stack = vec![(s, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (parent, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(edges: &[(usize, usize)]) -> bool {
    let mut ids: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    let m = edges.len();
    if n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let local = |v: usize| ids.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Embedder::new(adj).run()
}

struct Embedder {
    adj: Vec<Vec<usize>>,
    in_h: Vec<bool>,
    /// Edges of the embedded subgraph, as a sorted adjacency matrix row set.
    h_edge: std::collections::HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

enum Fragment {
    Edge(usize, usize),
    Component {
        vertices: Vec<usize>,
        attachments: Vec<usize>,
    },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Edge(a, b) => vec![*a, *b],
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

impl Embedder {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Embedder {
            adj,
            in_h: vec![false; n],
            h_edge: Default::default(),
            faces: Vec::new(),
        }
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn run(mut self) -> bool {
        let cycle = self.find_cycle();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            self.in_h[a] = true;
            self.h_edge.insert(Self::key(a, b));
        }
        let mut rev = cycle.clone();
        rev.reverse();
        self.faces = vec![cycle, rev];
        loop {
            let fragments = self.fragments();
            if fragments.is_empty() {
                return true;
            }
            let mut faces_of = vec![Vec::new(); self.adj.len()];
            for (f, face) in self.faces.iter().enumerate() {
                for &v in face {
                    faces_of[v].push(f);
                }
            }
            let mut choice = None;
            for (i, frag) in fragments.iter().enumerate() {
                let att = frag.attachments();
                let mut count = vec![0usize; self.faces.len()];
                for &a in &att {
                    for &f in &faces_of[a] {
                        count[f] += 1;
                    }
                }
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&f| count[f] == att.len())
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((i, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((i, admissible[0]));
                        }
                    }
                }
            }
            let (i, f) = choice.unwrap();
            let path = self.fragment_path(&fragments[i]);
            self.embed_path(f, &path);
        }
    }

    fn find_cycle(&self) -> Vec<usize> {
        // DFS from vertex 0 until a back edge closes a cycle.
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx == self.adj[v].len() {
                stack.pop();
                continue;
            }
            let w = self.adj[v][*idx];
            *idx += 1;
            if w == parent[v] {
                continue;
            }
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        }
        unreachable!("biconnected block with at least 5 vertices has a cycle")
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for v in 0..n {
            if !self.in_h[v] {
                continue;
            }
            for &w in &self.adj[v] {
                if w > v && self.in_h[w] && !self.h_edge.contains(&(v, w)) {
                    out.push(Fragment::Edge(v, w));
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.in_h[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut vertices = vec![s];
            let mut attachments = Vec::new();
            let mut i = 0;
            while i < vertices.len() {
                let v = vertices[i];
                i += 1;
                for &w in &self.adj[v] {
                    if self.in_h[w] {
                        attachments.push(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        vertices.push(w);
                    }
                }
            }
            attachments.sort_unstable();
            attachments.dedup();
            out.push(Fragment::Component {
                vertices,
                attachments,
            });
        }
        out
    }

    /// A path through the fragment joining two distinct attachment vertices.
    fn fragment_path(&self, frag: &Fragment) -> Vec<usize> {
        match frag {
            Fragment::Edge(a, b) => vec![*a, *b],
            Fragment::Component {
                vertices,
                attachments,
            } => {
                let start = attachments[0];
                let n = self.adj.len();
                let mut inside = vec![false; n];
                for &v in vertices {
                    inside[v] = true;
                }
                let mut prev = vec![usize::MAX; n];
                let mut queue = VecDeque::new();
                for &w in &self.adj[start] {
                    if inside[w] && prev[w] == usize::MAX {
                        prev[w] = start;
                        queue.push_back(w);
                    }
                }
                while let Some(v) = queue.pop_front() {
                    for &w in &self.adj[v] {
                        if inside[w] {
                            if prev[w] == usize::MAX {
                                prev[w] = v;
                                queue.push_back(w);
                            }
                        } else if self.in_h[w] && w != start {
                            let mut path = vec![w, v];
                            let mut x = v;
                            while prev[x] != start {
                                x = prev[x];
                                path.push(x);
                            }
                            path.push(start);
                            path.reverse();
                            return path;
                        }
                    }
                }
                unreachable!("fragment of a biconnected block has two attachments")
            }
        }
    }

    fn embed_path(&mut self, f: usize, path: &[usize]) {
        let face = std::mem::take(&mut self.faces[f]);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&v| v == a).unwrap();
        let ib = face.iter().position(|&v| v == b).unwrap();
        let len = face.len();
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % len;
                out.push(face[i]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        // a..b along the face, then back to a along the reversed path.
        let mut f1 = arc(ia, ib);
        f1.extend(inner.iter().rev());
        // b..a along the face, then forward along the path.
        let mut f2 = arc(ib, ia);
        f2.extend(inner.iter());
        self.faces[f] = f1;
        self.faces.push(f2);
        for w in path.windows(2) {
            self.h_edge.insert(Self::key(w[0], w[1]));
        }
        for &v in path {
            self.in_h[v] = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn small_classics() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&k33()));
        assert!(is_planar(&Graph::cycle(10)));
        assert!(is_planar(&Graph::new(0)));
    }

    #[test]
    fn k5_minus_edge_is_planar() {
        let mut g = Graph::new(5);
        for (a, b) in Graph::complete(5).edges() {
            if (a, b) != (0, 1) {
                g.add_edge(a, b);
            }
        }
        assert!(is_planar(&g));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert!(!is_planar(&g));
    }

    #[test]
    fn subdivided_k33_is_not_planar_but_blocks_split() {
        // K3,3 with one edge subdivided is still nonplanar.
        let mut g = Graph::new(7);
        for (a, b) in k33().edges() {
            if (a, b) == (0, 3) {
                g.add_edge(0, 6);
                g.add_edge(6, 3);
            } else {
                g.add_edge(a, b);
            }
        }
        assert!(!is_planar(&g));
        // Two K4s joined at a cut vertex stay planar.
        let h = Graph::from_edges(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        assert!(is_planar(&h));
    }
}
