//! Centered colourings, non-repetitive colourings and queue layouts: the
//! product-colouring construction, small exact oracles, checkers, and the
//! table of theoretical caps.

mod centered;
mod nonrepetitive;
mod queue;
mod report;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use centered::{
    centered_cap, check_p_centered, check_p_centered_subsets, chi_p_small, lift_p_centered,
    ChiMode, DEFAULT_CHECKER_CAP, DEFAULT_CHI_CAP,
};
pub use nonrepetitive::check_nonrepetitive;
pub use queue::{check_queue_layout, greedy_queue_layout, QueueLayout};
pub use report::{bound_report, BoundReport, BoundRow};

/// A colour per vertex. Serialized as a map from vertex id to colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BTreeMap<String, usize>", try_from = "BTreeMap<String, usize>")]
pub struct Colouring {
    colour_of: Vec<usize>,
}

impl From<Colouring> for BTreeMap<String, usize> {
    fn from(c: Colouring) -> Self {
        c.colour_of
            .iter()
            .enumerate()
            .map(|(v, &x)| (v.to_string(), x))
            .collect()
    }
}

impl TryFrom<BTreeMap<String, usize>> for Colouring {
    type Error = crate::Error;

    fn try_from(m: BTreeMap<String, usize>) -> crate::Result<Self> {
        let mut colour_of = vec![usize::MAX; m.len()];
        for (k, x) in m {
            let v: usize = k.parse().map_err(|_| {
                crate::Error::Malformed(format!("colouring key `{k}` is not a vertex"))
            })?;
            if v >= colour_of.len() {
                return crate::error::malformed(format!("colouring skips vertices below {v}"));
            }
            colour_of[v] = x;
        }
        Ok(Colouring { colour_of })
    }
}

impl Colouring {
    pub fn new(colour_of: Vec<usize>) -> Self {
        Colouring { colour_of }
    }

    /// Every vertex its own colour.
    pub fn rainbow(n: usize) -> Self {
        Colouring::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.colour_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colour_of.is_empty()
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colour_of[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colour_of
    }

    /// Number of distinct colours used.
    pub fn colour_count(&self) -> usize {
        let mut c = self.colour_of.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

/// A colouring by triples `(α, β, γ)`: position within a part/layer cell
/// (from 1), layer index modulo `p + 1`, and the colour of the part (from 1).
/// Serialized as a map from vertex id to a 3-element array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "BTreeMap<String, [usize; 3]>")]
pub struct ProductColouring {
    pub triples: Vec<[usize; 3]>,
}

impl From<ProductColouring> for BTreeMap<String, [usize; 3]> {
    fn from(c: ProductColouring) -> Self {
        c.triples
            .iter()
            .enumerate()
            .map(|(v, &t)| (v.to_string(), t))
            .collect()
    }
}

impl ProductColouring {
    /// Renumbers the distinct triples `0..` in sorted order.
    pub fn to_colouring(&self) -> Colouring {
        let mut distinct = self.triples.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Colouring::new(
            self.triples
                .iter()
                .map(|t| distinct.binary_search(t).unwrap())
                .collect(),
        )
    }

    pub fn colour_count(&self) -> usize {
        self.to_colouring().colour_count()
    }
}
