use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::bounds::binomial;
use crate::error::{malformed, Error, Result};

/// One theoretical cap: the bounded quantity, its value (exact, or symbolic
/// for asymptotic caps), the formula it comes from, and a short description
/// of the result that gives it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub quantity: String,
    #[serde(serialize_with = "big_as_string")]
    pub value: Option<BigUint>,
    pub symbolic: Option<String>,
    pub formula: String,
    pub anchor: String,
}

fn big_as_string<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub class: String,
    pub params: BTreeMap<String, u64>,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn row(&self, quantity: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.quantity == quantity)
    }

    /// Value of a row as `u64`, if present and small enough.
    pub fn value_u64(&self, quantity: &str) -> Option<u64> {
        self.row(quantity)?.value.as_ref()?.to_u64()
    }
}

struct Rows(Vec<BoundRow>);

impl Rows {
    fn exact(&mut self, quantity: &str, value: BigUint, formula: &str, anchor: &str) {
        self.0.push(BoundRow {
            quantity: quantity.into(),
            value: Some(value),
            symbolic: None,
            formula: formula.into(),
            anchor: anchor.into(),
        });
    }

    fn symbolic(&mut self, quantity: &str, expr: &str, anchor: &str) {
        self.0.push(BoundRow {
            quantity: quantity.into(),
            value: None,
            symbolic: Some(expr.into()),
            formula: expr.into(),
            anchor: anchor.into(),
        });
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(b: u64, e: u64) -> BigUint {
    num_traits::pow(big(b), e as usize)
}

fn param(params: &BTreeMap<String, u64>, name: &str) -> Result<u64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Error::Malformed(format!("missing parameter `{name}`")))
}

/// The layered-width and treewidth caps of a lifted shortcut partition and
/// the colouring caps that follow from them.
fn general_rows(rows: &mut Rows, k: u64, d: u64, ell: u64, t: u64, p: Option<u64>) {
    rows.exact(
        "fine_layered_width",
        big(d * ell * (k * k + 3)),
        "d·ℓ·(k²+3)",
        "shortcut lift, width against the fine layering",
    );
    rows.exact(
        "layered_width",
        big(d * ell * (k * k * k + 3 * k)),
        "d·ℓ·(k³+3k)",
        "shortcut lift, width against the coarsened layering",
    );
    rows.exact(
        "treewidth",
        binomial(k + t, t) - 1u32,
        "C(k+t, t) − 1",
        "shortcut lift, quotient treewidth",
    );
    if let Some(p) = p {
        let lw = big(d * ell * (k * k * k + 3 * k));
        rows.exact(
            "p_centered_colours",
            lw * (p + 1) * binomial(p + binom_top(k, t), binom_top(k, t)),
            "ℓ'·(p+1)·C(p+t', t') for the lifted width ℓ' and treewidth t'",
            "p-centered colouring of a product-structured graph",
        );
    }
}

/// Treewidth `t'` of the lifted quotient, saturated to fit a `u64`.
fn binom_top(k: u64, t: u64) -> u64 {
    (binomial(k + t, t) - 1u32).to_u64().unwrap_or(u64::MAX / 2)
}

/// Queue-number cap `3ℓ·qn(H) + ⌊3ℓ/2⌋`.
fn queue_cap(ell: &BigUint, qn_h: &BigUint) -> BigUint {
    big(3) * ell * qn_h + big(3) * ell / 2u32
}

/// The table of theoretical caps for a graph class. Classes and their
/// parameters:
///
/// * `kplanar`: `k`, optional `p`
/// * `1planar`: optional `p`
/// * `power`: `k`, `delta`, `ell`, `t`, optional `p`
/// * `map`: `d`, optional `p`
/// * `string`: `delta`
/// * `knn`: `k`
/// * `shortcut`: `k`, `d`, `ell`, `t`, optional `p`
pub fn bound_report(class: &str, params: &BTreeMap<String, u64>) -> Result<BoundReport> {
    let p = params.get("p").copied();
    let mut rows = Rows(Vec::new());
    match class {
        "kplanar" => {
            let k = param(params, "k")?;
            let width = 18 * k * k + 48 * k + 30;
            let bag = binomial(k + 4, 3);
            rows.exact(
                "layered_width",
                big(width),
                "18k²+48k+30",
                "k-planar layered width cap",
            );
            rows.exact(
                "treewidth",
                bag.clone() - 1u32,
                "C(k+4, 3) − 1",
                "k-planar quotient treewidth cap",
            );
            let t = (bag.clone() - 1u32).to_u64().unwrap_or(u64::MAX / 2);
            rows.exact(
                "nonrepetitive_colours",
                big(width) * num_traits::pow(big(4), (t + 1) as usize),
                "ℓ·4^(t+1)",
                "non-repetitive colouring of a product-structured graph",
            );
            if let Some(p) = p {
                rows.exact(
                    "p_centered_colours",
                    big(width) * (p + 1) * binomial(p + t, t),
                    "ℓ·(p+1)·C(p+t, t)",
                    "p-centered colouring of a product-structured graph",
                );
            }
        }
        "1planar" => {
            rows.exact("layered_width", big(30), "30", "1-planar layered width cap");
            rows.exact("treewidth", big(3), "3", "1-planar quotient treewidth cap");
            rows.exact(
                "queue_number",
                queue_cap(&big(30), &big(5)),
                "3·30·5 + ⌊3·30/2⌋",
                "queue layout of a product-structured graph, planar quotient of treewidth 3 in 5 queues",
            );
            rows.exact(
                "nonrepetitive_colours",
                big(30) * pow(4, 4),
                "30·4⁴",
                "non-repetitive colouring of a product-structured graph",
            );
            if let Some(p) = p {
                rows.exact(
                    "p_centered_colours",
                    big(5 * (p + 3) * (p + 2)) * (p + 1) * (p + 1),
                    "5(p+3)(p+2)(p+1)²",
                    "p-centered colouring of a product-structured graph",
                );
            }
        }
        "power" => {
            let k = param(params, "k")?;
            let delta = param(params, "delta")?;
            let ell = param(params, "ell")?;
            let t = param(params, "t")?;
            if k == 0 {
                return malformed("power needs k ≥ 1");
            }
            let dk = pow(delta, k);
            rows.exact(
                "shortcut_load",
                big(2 * k) * &dk,
                "2kΔ^k",
                "shortcut system of the k-th power",
            );
            rows.exact(
                "drawing_crossings",
                big(2 * k * (k + 1)) * &dk,
                "2k(k+1)Δ^k",
                "crossings per edge in a drawing of the k-th power",
            );
            rows.exact(
                "layered_width",
                big(2 * k * ell) * &dk * (k * k * k + 3 * k),
                "2kℓΔ^k(k³+3k)",
                "k-th power layered width cap",
            );
            rows.exact(
                "treewidth",
                binomial(k + t, t) - 1u32,
                "C(k+t, t) − 1",
                "k-th power quotient treewidth cap",
            );
            if let Some(p) = p {
                let tt = binom_top(k, t);
                rows.exact(
                    "p_centered_colours",
                    big(2 * k * ell) * &dk * (k * k * k + 3 * k) * (p + 1) * binomial(p + tt, tt),
                    "ℓ'·(p+1)·C(p+t', t') for the lifted width ℓ' and treewidth t'",
                    "p-centered colouring of a product-structured graph",
                );
            }
        }
        "map" => {
            let d = param(params, "d")?;
            let dd = d * d.saturating_sub(3);
            rows.exact(
                "shortcut_load",
                big(dd / 2),
                "d(d−3)/2",
                "shortcut system of a d-map graph",
            );
            rows.exact(
                "layered_width",
                big(21 * dd),
                "21d(d−3)",
                "d-map graph layered width cap",
            );
            rows.exact(
                "treewidth",
                big(9),
                "9",
                "d-map graph quotient treewidth cap",
            );
            rows.exact(
                "nonrepetitive_colours",
                big(21 * dd) * pow(4, 10),
                "21·4¹⁰·d(d−3)",
                "non-repetitive colouring of a product-structured graph",
            );
            rows.exact(
                "queue_number",
                big(32225 * dd),
                "32225·d(d−3) (strict)",
                "queue layout of a product-structured graph",
            );
            if let Some(p) = p {
                rows.exact(
                    "p_centered_colours",
                    big(21 * dd) * (p + 1) * binomial(p + 9, 9),
                    "21d(d−3)(p+1)·C(p+9, 9)",
                    "p-centered colouring of a product-structured graph",
                );
            }
        }
        "string" => {
            let delta = param(params, "delta")?;
            rows.exact(
                "shortcut_length",
                big(delta + 1),
                "δ+1",
                "shortcut system of a string graph",
            );
            rows.exact(
                "shortcut_load",
                big(delta + 1),
                "δ+1",
                "shortcut system of a string graph",
            );
            let d = delta;
            rows.exact(
                "layered_width",
                big(3 * (d.pow(4) + 4 * d.pow(3) + 9 * d * d + 10 * d + 4)),
                "3(δ⁴+4δ³+9δ²+10δ+4)",
                "string graph layered width cap",
            );
            rows.exact(
                "treewidth",
                binomial(delta + 4, 3) - 1u32,
                "C(δ+4, 3) − 1",
                "string graph quotient treewidth cap",
            );
        }
        "knn" => {
            let k = param(params, "k")?;
            if k == 0 {
                return malformed("knn needs k ≥ 1");
            }
            rows.exact(
                "max_degree",
                big(6 * k),
                "6k",
                "k-nearest-neighbour degree cap",
            );
            rows.exact(
                "crossings_per_edge",
                big(78 * k * k - 6 * k),
                "78k²−6k",
                "k-nearest-neighbour crossing cap",
            );
            rows.symbolic(
                "treewidth",
                "O(k⁶)",
                "k-nearest-neighbour quotient treewidth",
            );
            rows.symbolic(
                "layered_width",
                "O(k⁴)",
                "k-nearest-neighbour layered width",
            );
        }
        "shortcut" => {
            let k = param(params, "k")?;
            let d = param(params, "d")?;
            let ell = param(params, "ell")?;
            let t = param(params, "t")?;
            general_rows(&mut rows, k, d, ell, t, p);
            let ellb = big(ell);
            rows.exact(
                "quotient_bag_size",
                binomial(k + t, t),
                "C(k+t, t)",
                "shortcut lift, quotient bag size",
            );
            rows.exact(
                "base_nonrepetitive_factor",
                ellb * pow(4, t + 1),
                "ℓ·4^(t+1)",
                "non-repetitive colouring of the base product structure",
            );
        }
        other => return Err(Error::UnknownClass(other.to_string())),
    }
    Ok(BoundReport {
        class: class.to_string(),
        params: params.clone(),
        rows: rows.0,
    })
}
