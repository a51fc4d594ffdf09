use serde::{Deserialize, Serialize};

use super::{Graph, Layering};
use crate::error::{malformed, Result};

/// A partition of the vertices into parts indexed `0..part_count`.
///
/// Parts may be empty; the quotient only has a vertex per non-empty part.
/// Serialized as an array of parts, each an array of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct HPartition {
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl From<HPartition> for Vec<Vec<usize>> {
    fn from(p: HPartition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<Vec<usize>>> for HPartition {
    type Error = crate::Error;

    fn try_from(parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = parts.iter().map(Vec::len).sum();
        HPartition::new(n, parts)
    }
}

impl HPartition {
    /// Builds a partition of `0..n` from explicit parts. Overlapping parts
    /// and uncovered vertices are malformed input.
    pub fn new(n: usize, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (x, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return malformed(format!("part {x} contains vertex {v} outside 0..{n}"));
                }
                if part_of[v] != usize::MAX {
                    return malformed(format!(
                        "parts {} and {x} overlap in vertex {v}",
                        part_of[v]
                    ));
                }
                part_of[v] = x;
            }
        }
        if let Some(v) = part_of.iter().position(|&x| x == usize::MAX) {
            return malformed(format!("vertex {v} is not covered by any part"));
        }
        Ok(HPartition { part_of, parts })
    }

    /// Partition from a total assignment vertex -> part id. The number of
    /// parts is one more than the largest id; unused ids give empty parts.
    pub fn from_assignment(part_of: Vec<usize>) -> Self {
        Self::from_assignment_with_count(part_of.iter().map(|&x| x + 1).max().unwrap_or(0), part_of)
    }

    pub fn from_assignment_with_count(count: usize, part_of: Vec<usize>) -> Self {
        let mut parts = vec![Vec::new(); count];
        for (v, &x) in part_of.iter().enumerate() {
            parts[x].push(v);
        }
        HPartition { part_of, parts }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment((0..n).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.part_of
    }

    pub fn part(&self, x: usize) -> &[usize] {
        &self.parts[x]
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn quotient(&self, g: &Graph) -> Result<Quotient> {
        quotient(g, self)
    }
}

/// Quotient graph `G/P`: one vertex per non-empty part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// `part_ids[i]` is the part represented by quotient vertex `i`.
    pub part_ids: Vec<usize>,
    /// Inverse of `part_ids`; `None` for empty parts.
    pub vertex_of_part: Vec<Option<usize>>,
}

pub fn quotient(g: &Graph, p: &HPartition) -> Result<Quotient> {
    if p.vertex_count() != g.vertex_count() {
        return malformed(format!(
            "partition covers {} vertices but the graph has {}",
            p.vertex_count(),
            g.vertex_count()
        ));
    }
    let mut vertex_of_part = vec![None; p.part_count()];
    let mut part_ids = Vec::new();
    for (x, part) in p.parts().iter().enumerate() {
        if !part.is_empty() {
            vertex_of_part[x] = Some(part_ids.len());
            part_ids.push(x);
        }
    }
    let mut h = Graph::new(part_ids.len());
    for (u, v) in g.edges() {
        let a = vertex_of_part[p.part_of(u)].unwrap();
        let b = vertex_of_part[p.part_of(v)].unwrap();
        if a != b {
            h.add_edge(a, b);
        }
    }
    Ok(Quotient {
        graph: h,
        part_ids,
        vertex_of_part,
    })
}

/// Largest `|S_x ∩ L_i|` over parts and layers, counting only vertices for
/// which `count_only` is true (all vertices if `None`).
pub fn layered_width(p: &HPartition, l: &Layering, count_only: Option<&[bool]>) -> usize {
    assert_eq!(
        p.vertex_count(),
        l.vertex_count(),
        "partition and layering differ in size"
    );
    let mut cells = std::collections::HashMap::new();
    let mut best = 0;
    for v in 0..p.vertex_count() {
        if count_only.is_some_and(|c| !c[v]) {
            continue;
        }
        let c = cells.entry((p.part_of(v), l.layer_of(v))).or_insert(0usize);
        *c += 1;
        best = best.max(*c);
    }
    best
}
