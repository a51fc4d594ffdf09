use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{malformed, Result};

/// An ordered partition of the vertices into layers `L_0, L_1, ...`.
///
/// Serialized as an array of layers, each an array of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct Layering {
    layer_of: Vec<usize>,
}

impl From<Layering> for Vec<Vec<usize>> {
    fn from(l: Layering) -> Self {
        l.layers()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Layering {
    type Error = crate::Error;

    fn try_from(layers: Vec<Vec<usize>>) -> Result<Self> {
        let n = layers.iter().map(Vec::len).sum();
        Layering::from_layers(n, &layers)
    }
}

impl Layering {
    pub fn from_layer_of(layer_of: Vec<usize>) -> Self {
        Layering { layer_of }
    }

    /// Builds a layering of `0..n` from explicit layers. Every vertex must
    /// appear exactly once.
    pub fn from_layers(n: usize, layers: &[Vec<usize>]) -> Result<Self> {
        let mut layer_of = vec![usize::MAX; n];
        for (i, layer) in layers.iter().enumerate() {
            for &v in layer {
                if v >= n {
                    return malformed(format!("layer {i} contains vertex {v} outside 0..{n}"));
                }
                if layer_of[v] != usize::MAX {
                    return malformed(format!("vertex {v} appears in two layers"));
                }
                layer_of[v] = i;
            }
        }
        if let Some(v) = layer_of.iter().position(|&l| l == usize::MAX) {
            return malformed(format!("vertex {v} is missing from the layering"));
        }
        Ok(Layering { layer_of })
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.layer_of
    }

    pub fn layer_count(&self) -> usize {
        self.layer_of.iter().map(|&l| l + 1).max().unwrap_or(0)
    }

    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.layer_count()];
        for (v, &l) in self.layer_of.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    /// Groups `factor` consecutive layers: new layer `i` is the union of
    /// `L_{factor*i} .. L_{factor*i + factor - 1}`.
    pub fn coarsen(&self, factor: usize) -> Layering {
        assert!(factor >= 1, "coarsening factor must be positive");
        Layering {
            layer_of: self.layer_of.iter().map(|&l| l / factor).collect(),
        }
    }
}

/// Layers by BFS distance from the lowest vertex of each component; every
/// component starts at layer 0.
pub fn bfs_forest_layering(g: &Graph) -> Layering {
    let mut layer_of = vec![usize::MAX; g.vertex_count()];
    for comp in g.components() {
        let dist = g.bfs_distances(comp[0]);
        for v in comp {
            layer_of[v] = dist[v].expect("same component");
        }
    }
    Layering { layer_of }
}

/// Returns the edges whose endpoints lie in layers more than one apart.
pub fn validate_layering(g: &Graph, l: &Layering) -> Result<Vec<(usize, usize)>> {
    if l.vertex_count() != g.vertex_count() {
        return malformed(format!(
            "layering covers {} vertices but the graph has {}",
            l.vertex_count(),
            g.vertex_count()
        ));
    }
    Ok(g.edges()
        .filter(|&(u, v)| l.layer_of(u).abs_diff(l.layer_of(v)) >= 2)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_layerings() {
        let p4 = Graph::path(4);
        let l = Layering::from_layers(4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert!(validate_layering(&p4, &l).unwrap().is_empty());
        let l = Layering::from_layers(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(validate_layering(&p4, &l).unwrap().is_empty());
    }

    #[test]
    fn triangle_in_three_layers_violates_one_edge() {
        let k3 = Graph::complete(3);
        let l = Layering::from_layers(3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(validate_layering(&k3, &l).unwrap(), vec![(0, 2)]);
    }

    #[test]
    fn missing_vertex_is_malformed() {
        assert!(Layering::from_layers(3, &[vec![0], vec![1]]).is_err());
        let l = Layering::from_layer_of(vec![0, 1]);
        assert!(validate_layering(&Graph::path(3), &l).is_err());
    }

    #[test]
    fn coarsen_groups_consecutive_layers() {
        let l = Layering::from_layer_of(vec![0, 1, 2, 3, 4]);
        assert_eq!(l.coarsen(2).as_slice(), &[0, 0, 1, 1, 2]);
    }

    #[test]
    fn forest_layering_restarts_per_component() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let l = bfs_forest_layering(&g);
        assert_eq!(l.as_slice(), &[0, 1, 2, 0, 1]);
        assert!(validate_layering(&g, &l).unwrap().is_empty());
    }
}
