//! Exact geometry on rational points.
//!
//! Input coordinates are rationals. A point set is scaled by the least common
//! multiple of its denominators so that all predicates run on integers:
//! orientation tests in `i128`, crossing positions as big rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates must stay below this magnitude after scaling so that
/// orientation determinants fit in `i128`.
pub const COORD_LIMIT: i64 = 1 << 61;

/// A rational coordinate as it appears in JSON or CSV: an integer or a
/// string `"p/q"` / `"p"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

impl RationalInput {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalInput::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            RationalInput::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_integer() {
            if let Some(i) = r.numer().to_i64() {
                return RationalInput::Int(i);
            }
        }
        RationalInput::Text(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Geometry(format!("cannot parse `{s}` as a rational"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IPoint {
    pub x: i64,
    pub y: i64,
}

impl IPoint {
    pub fn new(x: i64, y: i64) -> Self {
        IPoint { x, y }
    }

    pub fn sub(self, o: IPoint) -> (i128, i128) {
        (self.x as i128 - o.x as i128, self.y as i128 - o.y as i128)
    }
}

/// Scales rational points to integer points by the common denominator.
pub fn to_integer_points(points: &[(BigRational, BigRational)]) -> Result<Vec<IPoint>> {
    let mut l = BigInt::one();
    for (x, y) in points {
        l = l.lcm(x.denom()).lcm(y.denom());
    }
    let scale = |r: &BigRational| -> Result<i64> {
        let v = (r * BigRational::from_integer(l.clone())).to_integer();
        v.to_i64()
            .filter(|v| v.abs() < COORD_LIMIT)
            .ok_or_else(|| Error::Geometry(format!("coordinate {r} is too large after scaling")))
    };
    points
        .iter()
        .map(|(x, y)| Ok(IPoint::new(scale(x)?, scale(y)?)))
        .collect()
}

fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

/// Sign of the turn `a -> b -> c`: positive for counter-clockwise.
pub fn orient(a: IPoint, b: IPoint, c: IPoint) -> i32 {
    cross(b.sub(a), c.sub(a)).signum() as i32
}

/// True if `p` lies on the closed segment `ab`.
pub fn on_segment(p: IPoint, a: IPoint, b: IPoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    Disjoint,
    /// The segments cross at a single point interior to both.
    Proper,
    /// Any other contact: touching, an endpoint on the other segment, or
    /// collinear overlap.
    Degenerate,
}

/// Classifies how closed segments `ab` and `cd` meet.
pub fn segment_contact(a: IPoint, b: IPoint, c: IPoint, d: IPoint) -> Contact {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Proper;
    }
    if on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d) {
        return Contact::Degenerate;
    }
    Contact::Disjoint
}

/// Position `t ∈ (0,1)` of the crossing along `ab` for properly crossing
/// segments `ab` and `cd`.
pub fn crossing_param(a: IPoint, b: IPoint, c: IPoint, d: IPoint) -> BigRational {
    let num = cross(c.sub(a), d.sub(c));
    let den = cross(b.sub(a), d.sub(c));
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact crossing point of properly crossing segments.
pub fn crossing_point(a: IPoint, b: IPoint, c: IPoint, d: IPoint) -> (BigRational, BigRational) {
    let t = crossing_param(a, b, c, d);
    let lerp = |p: i64, q: i64| {
        BigRational::from_integer(BigInt::from(p))
            + &t * BigRational::from_integer(BigInt::from(q as i128 - p as i128))
    };
    (lerp(a.x, b.x), lerp(a.y, b.y))
}

/// Counter-clockwise angular order of direction vectors, starting from the
/// positive x-axis.
pub fn direction_cmp(u: (i128, i128), v: (i128, i128)) -> Ordering {
    let half = |w: (i128, i128)| {
        if w.1 > 0 || (w.1 == 0 && w.0 > 0) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&cross(u, v)))
}

/// Squared Euclidean distance.
pub fn dist2(a: IPoint, b: IPoint) -> i128 {
    let (dx, dy) = a.sub(b);
    dx * dx + dy * dy
}
