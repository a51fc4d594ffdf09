use serde::Serialize;

use super::{quotient, Graph, HPartition, Layering};
use crate::error::Result;

/// Position of a vertex in `H ⊠ P ⊠ K_ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProductCoord {
    pub part: usize,
    pub layer: usize,
    pub copy: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductEmbedding {
    pub coords: Vec<ProductCoord>,
    /// Size of the complete factor, i.e. the layered width.
    pub width: usize,
    /// Edges of `G` that do not land on an edge of the product.
    pub bad_edges: Vec<(usize, usize)>,
}

impl ProductEmbedding {
    pub fn is_valid(&self) -> bool {
        self.bad_edges.is_empty()
    }
}

/// Maps each vertex to `(part, layer, copy)` where copies number the vertices
/// of each part/layer cell in increasing id order, then checks every edge
/// against the strong product `H ⊠ P ⊠ K_ℓ` with `H` the quotient.
pub fn embed_into_product(g: &Graph, p: &HPartition, l: &Layering) -> Result<ProductEmbedding> {
    let q = quotient(g, p)?;
    let mut next_copy = std::collections::HashMap::new();
    let mut coords = Vec::with_capacity(g.vertex_count());
    let mut width = 0;
    for v in 0..g.vertex_count() {
        let cell = (p.part_of(v), l.layer_of(v));
        let c = next_copy.entry(cell).or_insert(0usize);
        coords.push(ProductCoord {
            part: cell.0,
            layer: cell.1,
            copy: *c,
        });
        *c += 1;
        width = width.max(*c);
    }
    let bad_edges = g
        .edges()
        .filter(|&(u, v)| {
            let (a, b) = (coords[u], coords[v]);
            let parts_ok = a.part == b.part || {
                let x = q.vertex_of_part[a.part].unwrap();
                let y = q.vertex_of_part[b.part].unwrap();
                q.graph.has_edge(x, y)
            };
            let layers_ok = a.layer.abs_diff(b.layer) <= 1;
            !(parts_ok && layers_ok && a != b)
        })
        .collect();
    Ok(ProductEmbedding {
        coords,
        width,
        bad_edges,
    })
}
