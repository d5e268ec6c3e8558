//! Exact linear algebra over the exponent lattice.
//!
//! The exponent matrix `J` has the exponent vectors `w_1, ..., w_n` of
//! `f = x^{w_1} + ... + x^{w_n}` as its columns. Every integer vector `u`
//! has unique rational coordinates `r` with `J r = u`; the weight of `u` is
//! the sum of those coordinates.

mod domain;
mod snf;

pub use domain::{DomainPoint, FundamentalDomain};
pub use snf::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

/// Square matrix of arbitrary-precision integers, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Exact rational coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// True when every entry lies in `[0, 1)`.
    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative() && x < &BigRational::one())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Computes `(det A, adj A)` exactly, with `A * adj A = det A * I`.
///
/// Fraction-free Gauss-Jordan over the rationals; the adjugate is recovered
/// as `det * A^{-1}`, which is integral.
pub fn det_and_adjugate(rows: &[Vec<i64>]) -> Result<(BigInt, IntMatrix)> {
    let big: IntMatrix = rows
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    det_and_adjugate_big(&big)
}

pub(crate) fn det_and_adjugate_big(a: &IntMatrix) -> Result<(BigInt, IntMatrix)> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::DetZero)?;
        if pivot != col {
            m.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for j in 0..n {
            m[col][j] = &m[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let dm = &factor * &m[col][j];
                m[r][j] -= dm;
                let di = &factor * &inv[col][j];
                inv[r][j] -= di;
            }
        }
    }
    debug_assert!(det.is_integer());
    let det_int = det.to_integer();
    let adj = inv
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    let y = x * &det;
                    debug_assert!(y.is_integer());
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    Ok((det_int, adj))
}

#[cfg(test)]
pub(crate) fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub(crate) fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// The `n x n` integer matrix `J` whose columns are the exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentMatrix {
    #[serde(rename = "matrix")]
    rows: Vec<Vec<i64>>,
    #[serde(skip)]
    det: BigInt,
    #[serde(skip)]
    adj: IntMatrix,
}

impl ExponentMatrix {
    /// Builds `J` from its rows (so `rows[k][j]` is the `k`-th entry of `w_j`).
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let (det, adj) = det_and_adjugate(&rows)?;
        if det.is_zero() {
            return Err(Error::DetZero);
        }
        if det.abs() > BigInt::from(i64::MAX) {
            return Err(Error::TooLarge(det.to_string()));
        }
        Ok(Self { rows, det, adj })
    }

    pub fn from_columns(columns: Vec<Vec<i64>>) -> Result<Self> {
        let n = columns.len();
        if n == 0 || columns.iter().any(|c| c.len() != n) {
            return Err(Error::NotSquare);
        }
        let rows = (0..n).map(|k| columns.iter().map(|c| c[k]).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_rows(rows).expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The exponent vector `w_j`.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.dim()).map(|j| self.column(j)).collect()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn adjugate(&self) -> &IntMatrix {
        &self.adj
    }

    /// `|det J|`, the number of points in the fundamental domain.
    pub fn abs_det(&self) -> u64 {
        self.det.abs().to_u64().expect("bounded at construction")
    }

    fn check_len(&self, u: &[i64]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.len(),
            });
        }
        Ok(())
    }

    /// `adj(J) u` as integers; the coordinates are this divided by `det J`.
    pub(crate) fn scaled_coords(&self, u: &[i64]) -> Vec<BigInt> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(u).map(|(a, &x)| a * x).sum())
            .collect()
    }

    /// The unique rational `r` with `J r = u`.
    pub fn coords(&self, u: &[i64]) -> Result<RationalVector> {
        self.check_len(u)?;
        Ok(RationalVector(
            self.scaled_coords(u)
                .into_iter()
                .map(|x| BigRational::new(x, self.det.clone()))
                .collect(),
        ))
    }

    /// `J r`; `None` unless the result is integral.
    pub fn apply(&self, r: &RationalVector) -> Option<Vec<i64>> {
        if r.len() != self.dim() {
            return None;
        }
        self.rows
            .iter()
            .map(|row| {
                let v = row
                    .iter()
                    .zip(&r.0)
                    .fold(BigRational::zero(), |acc, (&a, x)| acc + x * BigInt::from(a));
                if v.is_integer() {
                    v.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Sum of the coordinates of `u`. Defined on all of `Z^n`; use
    /// [`in_cone`](Self::in_cone) or [`cone_weight`](Self::cone_weight) when
    /// membership in `M(f)` matters.
    pub fn weight(&self, u: &[i64]) -> Result<BigRational> {
        Ok(self.coords(u)?.sum())
    }

    pub fn in_cone(&self, u: &[i64]) -> Result<bool> {
        Ok(self.coords(u)?.is_nonnegative())
    }

    /// Weight of a point of the monoid `M(f)`.
    pub fn cone_weight(&self, u: &[i64]) -> Result<BigRational> {
        let r = self.coords(u)?;
        if !r.is_nonnegative() {
            return Err(Error::NotInCone(u.to_vec()));
        }
        Ok(r.sum())
    }

    /// The weight as a linear functional: `(1, ..., 1) J^{-1}`.
    pub fn weight_functional(&self) -> Vec<BigRational> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let s: BigInt = self.adj.iter().map(|row| &row[j]).sum();
                BigRational::new(s, self.det.clone())
            })
            .collect()
    }

    /// The least `M > 0` with `M * w(u)` integral for every `u` in `Z^n`.
    pub fn denominator_m(&self) -> u64 {
        self.weight_functional()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
            .to_u64()
            .expect("M divides det J")
    }

    /// The fundamental domain `S(Δ)`.
    pub fn fundamental_domain(&self) -> Result<FundamentalDomain> {
        FundamentalDomain::enumerate(self)
    }

    /// Canonical representative of `u` modulo the column lattice of `J`.
    pub fn reduce(&self, u: &[i64]) -> Result<DomainPoint> {
        self.check_len(u)?;
        Ok(DomainPoint::reduce(self, u))
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
