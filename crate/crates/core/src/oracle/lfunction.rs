use num_bigint::BigInt;

use super::cyclotomic::CyclotomicInteger;
use crate::dynamics::PrimeContext;
use crate::error::{Error, Result};
use crate::polygon::{LowerPolygon, Valuation};

/// Extra power sums past the expected degree used to certify that the
/// series terminates.
pub const MIN_SLACK: usize = 2;

/// `L(f, t)^{(-1)^{n-1}} = Σ a_k t^k` with coefficients in `Z[ζ_p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub p: u64,
    pub n: usize,
    /// `true` when the polynomial is `1 / L`, i.e. `n` is even.
    pub inverted: bool,
    pub coeffs: Vec<CyclotomicInteger>,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn valuations(&self) -> Vec<(usize, Valuation)> {
        self.coeffs.iter().map(CyclotomicInteger::ord_pi).enumerate().collect()
    }
}

/// `exp(s Σ_i S_i t^i / i)` with `s = (-1)^{n-1}`, expanded through degree
/// `sums.len()`.
///
/// From `P' = A' P` with `A = s Σ S_i t^i / i`: `k P_k = s Σ_{i=1}^k S_i P_{k-i}`.
/// Division by `k` must be exact through degree `D = |det J|`, and every
/// coefficient past `D` must vanish.
pub fn l_polynomial(ctx: &PrimeContext, sums: &[CyclotomicInteger]) -> Result<LPolynomial> {
    let p = ctx.p();
    let n = ctx.matrix().dim();
    let degree = ctx.matrix().abs_det() as usize;
    if sums.len() < degree + MIN_SLACK {
        return Err(Error::TooFewSums {
            needed: degree + MIN_SLACK,
            got: sums.len(),
        });
    }
    let inverted = n.is_multiple_of(2);
    let mut coeffs = vec![CyclotomicInteger::one(p)];
    for k in 1..=sums.len() {
        let mut acc = CyclotomicInteger::zero(p);
        for i in 1..=k {
            acc = &acc + &(&sums[i - 1] * &coeffs[k - i]);
        }
        if inverted {
            acc = -&acc;
        }
        let next = match acc.div_exact(&BigInt::from(k)) {
            Some(c) => c,
            None if k <= degree => return Err(Error::NotIntegral(k)),
            None => return Err(Error::NotPolynomial(k)),
        };
        if k > degree && !next.is_zero() {
            return Err(Error::NotPolynomial(k));
        }
        coeffs.push(next);
    }
    coeffs.truncate(degree + 1);
    Ok(LPolynomial { p, n, inverted, coeffs })
}

pub fn newton_polygon_empirical(poly: &LPolynomial) -> Result<LowerPolygon> {
    LowerPolygon::from_valuations(&poly.valuations())
}
