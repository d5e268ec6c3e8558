//! Exact arithmetic in `Z[ζ_p]` and the valuation at the prime `(1 - ζ_p)`.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `Σ_{j<p-1} c_j ζ^j`. The basis omits `ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2})`,
/// so for `p = 2` this is a plain integer and `ζ = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn new(p: u64, mut coeffs: Vec<BigInt>) -> Self {
        let rank = (p - 1) as usize;
        assert!(coeffs.len() <= rank, "too many coefficients for Z[ζ_{p}]");
        coeffs.resize(rank, BigInt::zero());
        Self { p, coeffs }
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn integer(p: u64, n: impl Into<BigInt>) -> Self {
        Self::new(p, vec![n.into()])
    }

    pub fn one(p: u64) -> Self {
        Self::integer(p, 1)
    }

    /// Reduces `Σ_{j<p} a_j ζ^j` (any length, exponents taken mod `p`).
    pub fn from_powers(p: u64, powers: &[BigInt]) -> Self {
        let pu = p as usize;
        let mut folded = vec![BigInt::zero(); pu];
        for (j, a) in powers.iter().enumerate() {
            folded[j % pu] += a;
        }
        let top = folded.pop().expect("p >= 2");
        Self::new(p, folded.into_iter().map(|c| c - &top).collect())
    }

    /// `ζ^k`.
    pub fn zeta_pow(p: u64, k: u64) -> Self {
        let mut powers = vec![BigInt::zero(); p as usize];
        powers[(k % p) as usize] = BigInt::one();
        Self::from_powers(p, &powers)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self / k` when every coefficient is divisible by `k`.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(self.p, out))
    }

    /// Coefficients in the basis `π^k`, `π = 1 - ζ`: substitute `ζ = 1 - π`.
    pub fn pi_adic_coeffs(&self) -> Vec<BigInt> {
        let rank = self.coeffs.len();
        (0..rank)
            .map(|k| {
                let s: BigInt = (k..rank)
                    .map(|j| &self.coeffs[j] * binomial(BigInt::from(j), BigInt::from(k)))
                    .sum();
                if k % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect()
    }

    /// `ord` normalised by `ord(p) = 1`, so `ord(1 - ζ) = 1 / (p - 1)`.
    /// `None` for zero.
    ///
    /// In the `π`-basis the candidates `ord_p(d_k) + k / (p - 1)` have
    /// distinct fractional parts, so the minimum is attained once and equals
    /// the valuation of the sum.
    pub fn ord_pi(&self) -> Option<BigRational> {
        let e = BigInt::from(self.p - 1);
        let p = BigInt::from(self.p);
        self.pi_adic_coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| {
                let mut v = 0i64;
                let mut d = d.abs();
                while d.is_multiple_of(&p) {
                    d /= &p;
                    v += 1;
                }
                BigRational::from_integer(v.into()) + BigRational::new(BigInt::from(k), e.clone())
            })
            .min()
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Z[ζ_p] for different p");
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.same_ring(rhs);
        CyclotomicInteger::new(self.p, self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.same_ring(rhs);
        CyclotomicInteger::new(self.p, self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger::new(self.p, self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.same_ring(rhs);
        let mut powers = vec![BigInt::zero(); self.p as usize];
        let pu = self.p as usize;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                powers[(i + j) % pu] += a * b;
            }
        }
        CyclotomicInteger::from_powers(self.p, &powers)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{mag}*z^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
