use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ShortcutSystem;
use crate::error::{malformed, Error, Result};
use crate::geom::{self, Contact, IPoint, RationalInput};
use crate::graph::Graph;

/// Polyline curves in the plane with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    into = "Vec<Vec<[RationalInput; 2]>>",
    try_from = "Vec<Vec<[RationalInput; 2]>>"
)]
pub struct CurveArrangement {
    pub curves: Vec<Vec<(BigRational, BigRational)>>,
}

impl From<CurveArrangement> for Vec<Vec<[RationalInput; 2]>> {
    fn from(a: CurveArrangement) -> Self {
        a.curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(x, y)| {
                        [
                            RationalInput::from_rational(x),
                            RationalInput::from_rational(y),
                        ]
                    })
                    .collect()
            })
            .collect()
    }
}

impl TryFrom<Vec<Vec<[RationalInput; 2]>>> for CurveArrangement {
    type Error = Error;

    fn try_from(v: Vec<Vec<[RationalInput; 2]>>) -> Result<Self> {
        let curves = v
            .iter()
            .map(|c| {
                c.iter()
                    .map(|[x, y]| Ok((x.to_rational()?, y.to_rational()?)))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(CurveArrangement { curves })
    }
}

/// Where a crossing sits on a curve: segment index and parameter along it.
type Position = (usize, BigRational);

struct Crossing {
    curves: [usize; 2],
    at: [Position; 2],
}

impl CurveArrangement {
    pub fn from_int_curves(curves: &[Vec<(i64, i64)>]) -> Self {
        let r = |v: i64| BigRational::from_integer(v.into());
        CurveArrangement {
            curves: curves
                .iter()
                .map(|c| c.iter().map(|&(x, y)| (r(x), r(y))).collect())
                .collect(),
        }
    }

    fn int_curves(&self) -> Result<Vec<Vec<IPoint>>> {
        let flat: Vec<(BigRational, BigRational)> = self.curves.iter().flatten().cloned().collect();
        let pts = geom::to_integer_points(&flat)?;
        let mut out = Vec::with_capacity(self.curves.len());
        let mut i = 0;
        for c in &self.curves {
            out.push(pts[i..i + c.len()].to_vec());
            i += c.len();
        }
        Ok(out)
    }

    /// All pairwise crossings. Fails on curves with fewer than two points,
    /// self-intersecting curves, tangencies, crossings through a bend, and
    /// three curves through one point.
    fn crossings(&self) -> Result<Vec<Crossing>> {
        let curves = self.int_curves()?;
        for (i, c) in curves.iter().enumerate() {
            if c.len() < 2 || c.windows(2).any(|w| w[0] == w[1]) {
                return malformed(format!(
                    "curve {i} needs at least two distinct consecutive points"
                ));
            }
            for s in 0..c.len() - 1 {
                if s + 2 < c.len() {
                    let (u, w) = (c[s].sub(c[s + 1]), c[s + 2].sub(c[s + 1]));
                    if u.0 * w.1 - u.1 * w.0 == 0 && u.0 * w.0 + u.1 * w.1 > 0 {
                        return Err(Error::Geometry(format!("curve {i} folds back on itself")));
                    }
                }
                for t in s + 2..c.len() - 1 {
                    if geom::segment_contact(c[s], c[s + 1], c[t], c[t + 1]) != Contact::Disjoint {
                        return Err(Error::Geometry(format!("curve {i} intersects itself")));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for a in 0..curves.len() {
            for b in a + 1..curves.len() {
                let (ca, cb) = (&curves[a], &curves[b]);
                for s in 0..ca.len() - 1 {
                    for t in 0..cb.len() - 1 {
                        match geom::segment_contact(ca[s], ca[s + 1], cb[t], cb[t + 1]) {
                            Contact::Disjoint => {}
                            Contact::Degenerate => {
                                return Err(Error::Geometry(format!(
                                    "curves {a} and {b} touch without crossing transversally"
                                )))
                            }
                            Contact::Proper => out.push(Crossing {
                                curves: [a, b],
                                at: [
                                    (s, geom::crossing_param(ca[s], ca[s + 1], cb[t], cb[t + 1])),
                                    (t, geom::crossing_param(cb[t], cb[t + 1], ca[s], ca[s + 1])),
                                ],
                            }),
                        }
                    }
                }
            }
        }
        let mut points: Vec<(BigRational, BigRational)> = out
            .iter()
            .map(|x| {
                let (ca, cb) = (&curves[x.curves[0]], &curves[x.curves[1]]);
                let (s, t) = (x.at[0].0, x.at[1].0);
                geom::crossing_point(ca[s], ca[s + 1], cb[t], cb[t + 1])
            })
            .collect();
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Geometry(
                "three curves pass through one point".into(),
            ));
        }
        Ok(out)
    }

    /// Number of crossing points on each curve.
    pub fn intersection_counts(&self) -> Result<Vec<usize>> {
        let mut count = vec![0; self.curves.len()];
        for x in self.crossings()? {
            count[x.curves[0]] += 1;
            count[x.curves[1]] += 1;
        }
        Ok(count)
    }

    /// Largest number of crossing points on any curve.
    pub fn max_intersections(&self) -> Result<usize> {
        Ok(self.intersection_counts()?.into_iter().max().unwrap_or(0))
    }
}

#[derive(Clone, Debug)]
pub struct StringShortcuts {
    /// Curve `i` is represented by vertex `i`; crossing vertices follow.
    pub g0: Graph,
    pub system: ShortcutSystem,
    pub representatives: Vec<usize>,
    /// Some pair of curves crosses more than once.
    pub multiplicity: bool,
    /// Whether the measured parameters are within `(δ + 1, δ + 1)`.
    pub within_bound: bool,
}

/// Builds the arrangement graph of the curves, with one representative
/// vertex per curve placed between its `⌊c/2⌋`-th and `⌊c/2⌋+1`-th crossing
/// (`c` crossings on the curve), and one shortcut per pair of crossing
/// curves: along the first curve from its representative to a common
/// crossing, then along the second curve to its representative. The common
/// crossing minimizes the path length, ties going to the lowest vertex id.
///
/// Crossings are counted per point, so a pair of curves that crosses twice
/// contributes two crossings to each curve. Every curve must have at most
/// `delta` crossings. `within_bound` reports whether the result respects
/// `(δ + 1, δ + 1)`.
pub fn string_shortcuts(a: &CurveArrangement, delta: usize) -> Result<StringShortcuts> {
    let crossings = a.crossings()?;
    let m = a.curves.len();
    let mut on_curve: Vec<Vec<(Position, usize)>> = vec![Vec::new(); m];
    for (i, x) in crossings.iter().enumerate() {
        for side in 0..2 {
            on_curve[x.curves[side]].push((x.at[side].clone(), m + i));
        }
    }
    let mut seq: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (v, list) in on_curve.iter_mut().enumerate() {
        if list.len() > delta {
            return malformed(format!(
                "curve {v} has {} crossings, more than {delta}",
                list.len()
            ));
        }
        list.sort();
        let mut s: Vec<usize> = list.iter().map(|x| x.1).collect();
        s.insert(s.len() / 2, v);
        seq.push(s);
    }
    let n = m + crossings.len();
    let mut g0 = Graph::new(n);
    for s in &seq {
        for w in s.windows(2) {
            g0.add_edge(w[0], w[1]);
        }
    }
    let index: Vec<BTreeMap<usize, usize>> = seq
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();

    let mut best: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (i, x) in crossings.iter().enumerate() {
        let [v, w] = x.curves;
        let c = m + i;
        let len = index[v][&c].abs_diff(index[v][&v]) + index[w][&c].abs_diff(index[w][&w]);
        let e = best.entry((v, w)).or_insert((len, c));
        if (len, c) < *e {
            *e = (len, c);
        }
    }
    let mut multiplicity = false;
    {
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for x in &crossings {
            *count.entry((x.curves[0], x.curves[1])).or_default() += 1;
        }
        multiplicity |= count.values().any(|&c| c > 1);
    }
    let walk = |v: usize, from: usize, to: usize| -> Vec<usize> {
        let (i, j) = (index[v][&from], index[v][&to]);
        if i <= j {
            seq[v][i..=j].to_vec()
        } else {
            seq[v][j..=i].iter().rev().copied().collect()
        }
    };
    let paths: Vec<Vec<usize>> = best
        .into_iter()
        .map(|((v, w), (_, c))| {
            let mut p = walk(v, v, c);
            p.extend(walk(w, c, w).into_iter().skip(1));
            p
        })
        .collect();
    let system = ShortcutSystem::new(g0.clone(), paths, delta + 1, delta + 1);
    let within_bound = super::validate_shortcuts(&system).within(delta + 1, delta + 1);
    Ok(StringShortcuts {
        g0,
        system,
        representatives: (0..m).collect(),
        multiplicity,
        within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortcut::{apply_shortcuts, validate_shortcuts};

    fn intersection_graph(s: &StringShortcuts) -> Graph {
        apply_shortcuts(&s.system).induced_subgraph(&s.representatives)
    }

    #[test]
    fn two_crossing_segments() {
        let a = CurveArrangement::from_int_curves(&[vec![(0, 0), (2, 2)], vec![(0, 2), (2, 0)]]);
        let s = string_shortcuts(&a, 1).unwrap();
        assert_eq!(s.system.paths, vec![vec![0, 2, 1]]);
        assert_eq!(intersection_graph(&s), Graph::complete(2));
        assert!(s.within_bound && !s.multiplicity);
    }

    #[test]
    fn path_of_three_curves() {
        let a = CurveArrangement::from_int_curves(&[
            vec![(0, 0), (0, 4)],
            vec![(-1, 1), (5, 1)],
            vec![(4, 0), (4, 4)],
        ]);
        let s = string_shortcuts(&a, 2).unwrap();
        assert_eq!(intersection_graph(&s), Graph::path(3));
        // Curve 1 has crossings 3 then 4; its representative sits between them.
        assert!(s.g0.has_edge(3, 1) && s.g0.has_edge(1, 4));
        assert!(validate_shortcuts(&s.system).k_actual <= 2);
    }

    #[test]
    fn star_of_four() {
        let mut curves = vec![vec![(0, 0), (10, 0)]];
        for x in 1..=4 {
            curves.push(vec![(2 * x, -1), (2 * x, 1)]);
        }
        let s = string_shortcuts(&CurveArrangement::from_int_curves(&curves), 4).unwrap();
        let g = intersection_graph(&s);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(validate_shortcuts(&s.system).k_actual, 3);
        assert!(s.within_bound);
    }

    #[test]
    fn degeneracies_are_rejected() {
        let touch =
            CurveArrangement::from_int_curves(&[vec![(0, 0), (2, 0)], vec![(1, 0), (1, 2)]]);
        assert!(matches!(
            string_shortcuts(&touch, 4),
            Err(Error::Geometry(_))
        ));
        let triple = CurveArrangement::from_int_curves(&[
            vec![(0, 0), (2, 2)],
            vec![(0, 2), (2, 0)],
            vec![(1, -1), (1, 3)],
        ]);
        assert!(matches!(
            string_shortcuts(&triple, 4),
            Err(Error::Geometry(_))
        ));
        let many = CurveArrangement::from_int_curves(&[vec![(0, 0), (2, 2)], vec![(0, 2), (2, 0)]]);
        assert!(string_shortcuts(&many, 0).is_err());
    }

    #[test]
    fn double_crossing_is_flagged() {
        let a = CurveArrangement::from_int_curves(&[
            vec![(0, 0), (10, 0)],
            vec![(1, -1), (3, 1), (5, -1)],
        ]);
        let s = string_shortcuts(&a, 2).unwrap();
        assert!(s.multiplicity);
        assert_eq!(intersection_graph(&s), Graph::complete(2));
    }
}
