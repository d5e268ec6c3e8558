use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;

use super::{smith_normal_form, ExponentMatrix, RationalVector};
use crate::error::{Error, Result};

/// Cross-check against the grid oracle only below these sizes.
const GRID_MAX_DET: u64 = 64;
const GRID_MAX_CELLS: u64 = 1 << 20;

/// A lattice point of the fundamental domain: all coordinates in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainPoint {
    pub u: Vec<i64>,
    pub r: RationalVector,
    pub weight: BigRational,
}

impl DomainPoint {
    /// `u' = u - J * floor(J^{-1} u)`.
    pub(crate) fn reduce(j: &ExponentMatrix, u: &[i64]) -> Self {
        let det = j.det();
        let scaled = j.scaled_coords(u);
        let floors: Vec<BigInt> = scaled.iter().map(|x| x.div_floor(det)).collect();
        let reduced: Vec<i64> = j
            .rows()
            .iter()
            .zip(u)
            .map(|(row, &x)| {
                let shift: BigInt = row.iter().zip(&floors).map(|(&a, f)| f * a).sum();
                (BigInt::from(x) - shift)
                    .to_i64()
                    .expect("reduced point is bounded by the column sums")
            })
            .collect();
        let r = RationalVector(
            scaled
                .into_iter()
                .zip(&floors)
                .map(|(x, f)| BigRational::new(x - f * det, det.clone()))
                .collect(),
        );
        let weight = r.sum();
        DomainPoint { u: reduced, r, weight }
    }

    pub fn is_origin(&self) -> bool {
        self.u.iter().all(|&x| x == 0)
    }
}

/// The set `S(Δ)` of lattice points with coordinates in `[0, 1)^n`, sorted
/// lexicographically by `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub matrix: ExponentMatrix,
    pub points: Vec<DomainPoint>,
}

impl FundamentalDomain {
    pub fn enumerate(j: &ExponentMatrix) -> Result<Self> {
        let points = enumerate_by_snf(j)?;
        if points.len() as u64 != j.abs_det() {
            return Err(Error::DomainMismatch);
        }
        let d = j.abs_det();
        let cells = d.checked_pow(j.dim() as u32);
        if d <= GRID_MAX_DET && cells.is_some_and(|c| c <= GRID_MAX_CELLS) {
            let grid = enumerate_by_grid(j);
            if grid.len() != points.len() || grid.iter().zip(&points).any(|(a, b)| a != &b.u) {
                return Err(Error::DomainMismatch);
            }
        }
        Ok(Self { matrix: j.clone(), points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DomainPoint> {
        self.points.iter()
    }

    /// Position of `u` in the canonical order.
    pub fn index_of(&self, u: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.u.as_slice().cmp(u)).ok()
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.points.iter().map(|p| p.weight.clone()).collect()
    }

    pub fn total_weight(&self) -> BigRational {
        self.points.iter().fold(BigRational::zero(), |acc, p| acc + &p.weight)
    }
}

/// Coset representatives of `Z^n / J Z^n` from the Smith form: with
/// `U J V = S`, the vectors `U^{-1} c` for `0 <= c_i < s_i` hit every coset
/// exactly once.
fn enumerate_by_snf(j: &ExponentMatrix) -> Result<Vec<DomainPoint>> {
    let snf = smith_normal_form(j.rows())?;
    let u_inv = snf.u_inverse();
    let moduli: Vec<u64> = snf
        .diagonal
        .iter()
        .map(|s| s.to_u64().ok_or_else(|| Error::TooLarge(s.to_string())))
        .collect::<Result<_>>()?;
    let n = j.dim();
    let mut counter = vec![0u64; n];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    loop {
        let rep: Vec<i64> = u_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&counter)
                    .map(|(a, &c)| a * c)
                    .sum::<BigInt>()
                    .to_i64()
                    .expect("coset representative fits in i64")
            })
            .collect();
        let point = DomainPoint::reduce(j, &rep);
        if seen.insert(point.u.clone()) {
            out.push(point);
        }
        // odometer over the product of Z/s_i
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| a.u.cmp(&b.u));
                return Ok(out);
            }
            counter[k] += 1;
            if counter[k] < moduli[k] {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Naive oracle: scan `r` over `{0, 1/D, ..., (D-1)/D}^n` and keep the
/// integral images `J r`.
fn enumerate_by_grid(j: &ExponentMatrix) -> Vec<Vec<i64>> {
    let d = j.abs_det() as i64;
    let n = j.dim();
    let mut k = vec![0i64; n];
    let mut out = Vec::new();
    loop {
        let image: Option<Vec<i64>> = j
            .rows()
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(&k).map(|(a, b)| a * b).sum();
                (s % d == 0).then_some(s / d)
            })
            .collect();
        if let Some(u) = image {
            out.push(u);
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            k[i] += 1;
            if k[i] < d {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}
