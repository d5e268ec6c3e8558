//! Lower convex polygons with exact rational vertices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Point = (BigRational, BigRational);

/// A valuation; `None` stands for `+∞` (a zero coefficient).
pub type Valuation = Option<BigRational>;

/// A lower convex polygon starting at the origin. Vertices are strict
/// corners: consecutive segments have strictly increasing slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LowerPolygon {
    vertices: Vec<Point>,
}

fn origin() -> Point {
    (BigRational::zero(), BigRational::zero())
}

fn cross(o: &Point, a: &Point, b: &Point) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl LowerPolygon {
    /// The polygon whose unit-length segments have the given slopes.
    pub fn from_slopes(mut slopes: Vec<BigRational>) -> Self {
        slopes.sort();
        let mut pts = vec![origin()];
        let mut x = BigRational::zero();
        let mut y = BigRational::zero();
        for s in slopes {
            x += BigRational::one();
            y += s;
            pts.push((x.clone(), y.clone()));
        }
        Self::hull(pts)
    }

    /// Lower convex hull of points that include the origin as their
    /// leftmost point.
    fn hull(mut pts: Vec<Point>) -> Self {
        pts.sort();
        pts.dedup_by(|b, a| a.0 == b.0);
        let mut out: Vec<Point> = Vec::with_capacity(pts.len());
        for pt in pts {
            while out.len() >= 2 && !cross(&out[out.len() - 2], &out[out.len() - 1], &pt).is_positive() {
                out.pop();
            }
            out.push(pt);
        }
        Self { vertices: out }
    }

    /// Newton polygon of `Σ a_i t^i` from `(i, ord a_i)`.
    ///
    /// Index 0 must carry valuation 0 and the largest index must be finite.
    pub fn from_valuations(points: &[(usize, Valuation)]) -> Result<Self> {
        let (last, last_val) = points
            .iter()
            .max_by_key(|(i, _)| *i)
            .ok_or_else(|| Error::MissingEndpoint("no points".into()))?;
        if last_val.is_none() {
            return Err(Error::MissingEndpoint(format!("infinite valuation at index {last}")));
        }
        let at_zero: Vec<_> = points.iter().filter(|(i, _)| *i == 0).collect();
        if at_zero.is_empty() || at_zero.iter().any(|(_, v)| v.as_ref().is_none_or(|v| !v.is_zero())) {
            return Err(Error::MissingEndpoint("index 0 must have valuation 0".into()));
        }
        let pts = points
            .iter()
            .filter_map(|(i, v)| {
                v.as_ref()
                    .map(|v| (BigRational::from_integer(BigInt::from(*i)), v.clone()))
            })
            .collect();
        Ok(Self::hull(pts))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().expect("polygon contains the origin")
    }

    pub fn width(&self) -> &BigRational {
        &self.end().0
    }

    /// Segment slopes, each repeated by its (integral) horizontal length.
    pub fn slopes(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let dx = &w[1].0 - &w[0].0;
            let slope = (&w[1].1 - &w[0].1) / &dx;
            let reps = dx
                .to_integer()
                .to_usize()
                .expect("segment lengths are small integers");
            debug_assert!(dx.is_integer());
            out.extend(std::iter::repeat_n(slope, reps));
        }
        out
    }

    /// Height of the polygon at `x`, for `0 <= x <= width`.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        if x.is_negative() || x > self.width() {
            return None;
        }
        let k = self.vertices.partition_point(|v| &v.0 < x);
        let b = &self.vertices[k];
        if &b.0 == x {
            return Some(b.1.clone());
        }
        let a = &self.vertices[k - 1];
        Some(&a.1 + (&b.1 - &a.1) * (x - &a.0) / (&b.0 - &a.0))
    }

    /// Compares `self` (as the Newton polygon) against `lower` (as the
    /// Hodge polygon) at every integer abscissa and every vertex.
    pub fn compare(&self, lower: &LowerPolygon) -> Result<Comparison> {
        if self.width() != lower.width() {
            return Err(Error::RangeMismatch {
                left: self.width().to_string(),
                right: lower.width().to_string(),
            });
        }
        let mut xs: BTreeSet<BigRational> = self
            .vertices
            .iter()
            .chain(&lower.vertices)
            .map(|v| v.0.clone())
            .collect();
        let last = self.width().floor().to_integer().to_i64().unwrap_or(0);
        xs.extend((0..=last).map(|x| BigRational::from_integer(x.into())));

        let mut above = true;
        let mut max_gap: Option<BigRational> = None;
        for x in &xs {
            let gap = self.eval(x).expect("in range") - lower.eval(x).expect("in range");
            above &= !gap.is_negative();
            if max_gap.as_ref().is_none_or(|g| &gap > g) {
                max_gap = Some(gap);
            }
        }
        let same_endpoints = self.end() == lower.end();
        let verdict = if self == lower {
            Verdict::Equal
        } else if above && same_endpoints {
            Verdict::StrictlyAbove
        } else {
            Verdict::Incomparable
        };
        Ok(Comparison {
            verdict,
            same_endpoints,
            max_gap: max_gap.unwrap_or_else(BigRational::zero),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    StrictlyAbove,
    Incomparable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::StrictlyAbove => "strictly_above",
            Verdict::Incomparable => "incomparable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    pub same_endpoints: bool,
    /// Largest vertical gap `NP(x) - HP(x)` over the compared abscissas.
    pub max_gap: BigRational,
}
