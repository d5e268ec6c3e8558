//! Finite fields `F_{p^i} = F_p[x] / (m(x))` with `m` the lexicographically
//! smallest monic irreducible polynomial of degree `i`.

use crate::error::{Error, Result};

/// Polynomials over `F_p`, coefficients low to high, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - dm;
        for (k, &mk) in m.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p - c * mk % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_pow_mod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `x^{p^i} = x mod m` and `gcd(x^{p^{i/l}} - x, m) = 1` for
/// every prime `l | i`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let m = trim(m.to_vec());
    if m.len() < 2 {
        return false;
    }
    let degree = m.len() - 1;
    let x: Poly = vec![0, 1];
    // x^{p^k} mod m for k = 0..=degree
    let mut frob = Vec::with_capacity(degree + 1);
    frob.push(poly_rem(&x, &m, p));
    for k in 1..=degree {
        let prev = &frob[k - 1];
        frob.push(poly_pow_mod(prev, u128::from(p), &m, p));
    }
    if poly_sub(&frob[degree], &frob[0], p) != Poly::new() {
        return false;
    }
    prime_factors(degree as u128).into_iter().all(|l| {
        let k = degree / l as usize;
        let g = poly_gcd(&poly_sub(&frob[k], &x, p), &m, p);
        g.len() == 1
    })
}

/// `F_{p^i}` with elements stored as coefficient vectors of length `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u64,
    degree: usize,
    /// Monic, low to high, length `degree + 1`.
    modulus: Vec<u64>,
}

/// An element of a [`FieldTower`]: `Σ c_k x^k`, `k < degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u64>);

impl FieldTower {
    /// The field built on the lexicographically smallest irreducible.
    pub fn new(p: u64, degree: usize) -> Self {
        Self::with_rank(p, degree, 0)
    }

    /// The field built on the `rank`-th irreducible (0-based) in the scan
    /// order: candidates `x^i + Σ c_k x^k` indexed by `Σ c_k p^k`.
    pub fn with_rank(p: u64, degree: usize, rank: usize) -> Self {
        assert!(degree >= 1, "extension degree must be positive");
        let mut found = 0;
        let mut index = 0u128;
        loop {
            let mut modulus = digits(index, p, degree);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                if found == rank {
                    return Self { p, degree, modulus };
                }
                found += 1;
            }
            index += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^i`.
    pub fn order(&self) -> u128 {
        u128::from(self.p).pow(self.degree as u32)
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.degree])
    }

    pub fn one(&self) -> Element {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Element {
        let mut v = vec![0; self.degree];
        v[0] = c % self.p;
        Element(v)
    }

    /// The class of `x`.
    pub fn generator(&self) -> Element {
        self.reduce(&[0, 1])
    }

    /// Element with base-`p` digits of `index` as coefficients.
    pub fn from_index(&self, index: u128) -> Element {
        Element(digits(index, self.p, self.degree))
    }

    pub fn to_index(&self, a: &Element) -> u128 {
        a.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * u128::from(self.p) + u128::from(c))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|k| self.from_index(k))
    }

    fn reduce(&self, a: &[u64]) -> Element {
        let mut r = poly_rem(a, &self.modulus, self.p);
        r.resize(self.degree, 0);
        Element(r)
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.0.len() != self.degree || a.0.iter().any(|&c| c >= self.p) {
            return Err(Error::ForeignElement);
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut r = poly_mul_mod(&a.0, &b.0, &self.modulus, self.p);
        r.resize(self.degree, 0);
        Element(r)
    }

    /// `a * b` into `out`, cheap when `b` is sparse.
    pub fn mul_into(&self, a: &Element, b: &Element, out: &mut Vec<u64>) {
        let p = self.p;
        let d = self.degree;
        out.clear();
        out.resize(2 * d - 1, 0);
        for (j, &y) in b.0.iter().enumerate() {
            if y == 0 {
                continue;
            }
            for (i, &x) in a.0.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        // monic modulus: x^d = -Σ m_k x^k
        for top in (d..2 * d - 1).rev() {
            let c = out[top];
            if c == 0 {
                continue;
            }
            out[top] = 0;
            let shift = top - d;
            for k in 0..d {
                out[shift + k] = (out[shift + k] + (p - c) * self.modulus[k]) % p;
            }
        }
        out.truncate(d);
    }

    pub fn pow(&self, a: &Element, e: u128) -> Element {
        let mut r = poly_pow_mod(&a.0, e, &self.modulus, self.p);
        r.resize(self.degree, 0);
        Element(r)
    }

    pub fn inverse(&self, a: &Element) -> Option<Element> {
        if a.0.iter().all(|&c| c == 0) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// `a^n` for any integer `n`, inverting for negative exponents.
    pub fn pow_signed(&self, a: &Element, e: i64) -> Option<Element> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inverse(a).map(|inv| self.pow(&inv, e.unsigned_abs() as u128))
        }
    }

    /// `Σ_{j<i} a^{p^j}` as an element of `F_p`.
    pub fn absolute_trace(&self, a: &Element) -> Result<u64> {
        self.check(a)?;
        let mut acc = self.zero();
        let mut conj = a.clone();
        for _ in 0..self.degree {
            acc = self.add(&acc, &conj);
            conj = self.pow(&conj, u128::from(self.p));
        }
        if acc.0[1..].iter().any(|&c| c != 0) {
            return Err(Error::TraceNotInPrimeField);
        }
        Ok(acc.0[0])
    }

    /// Traces of the power basis `1, x, ..., x^{i-1}`; the trace of any
    /// element is the dot product with its coefficients.
    pub fn trace_basis(&self) -> Vec<u64> {
        (0..self.degree)
            .map(|k| {
                let mut e = vec![0; self.degree];
                e[k] = 1;
                self.absolute_trace(&Element(e)).expect("basis elements belong to the field")
            })
            .collect()
    }

    /// The smallest element (by index) generating the multiplicative group.
    pub fn primitive_element(&self) -> Element {
        let group = self.order() - 1;
        let factors = prime_factors(group);
        let one = self.one();
        (1..self.order())
            .map(|k| self.from_index(k))
            .find(|g| factors.iter().all(|&l| self.pow(g, group / l) != one))
            .expect("the multiplicative group is cyclic")
    }
}

fn digits(mut index: u128, p: u64, len: usize) -> Vec<u64> {
    let p = u128::from(p);
    (0..len)
        .map(|_| {
            let d = (index % p) as u64;
            index /= p;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(FieldTower::new(2, 1).modulus(), &[0, 1]);
        assert_eq!(FieldTower::new(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(FieldTower::new(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(FieldTower::new(2, 3).modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldTower::with_rank(2, 3, 1).modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn irreducibility_counts() {
        // number of monic irreducibles of degree d over F_p (necklace formula)
        let cases = [(2u64, 1usize, 2usize), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 2, 3), (3, 3, 8), (5, 2, 10)];
        for (p, d, expected) in cases {
            let count = (0..(p as u128).pow(d as u32))
                .filter(|&k| {
                    let mut m = digits(k, p, d);
                    m.push(1);
                    is_irreducible(&m, p)
                })
                .count();
            assert_eq!(count, expected, "p={p} d={d}");
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[1], 2));
    }

    #[test]
    fn trace_examples() {
        let f2 = FieldTower::new(2, 1);
        assert_eq!(f2.absolute_trace(&f2.one()).unwrap(), 1);
        let f4 = FieldTower::new(2, 2);
        assert_eq!(f4.absolute_trace(&f4.one()).unwrap(), 0);
        let g = f4.generator();
        assert_eq!(f4.mul(&g, &g), f4.add(&g, &f4.one()));
        assert_eq!(f4.absolute_trace(&g).unwrap(), 1);
        assert_eq!(f4.absolute_trace(&Element(vec![2, 0])), Err(Error::ForeignElement));
    }

    #[test]
    fn primitive_elements() {
        for (p, d) in [(2u64, 1usize), (2, 4), (3, 2), (5, 1), (7, 2), (13, 1)] {
            let f = FieldTower::new(p, d);
            let g = f.primitive_element();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = f.one();
            for _ in 0..f.order() - 1 {
                seen.insert(x.clone());
                x = f.mul(&x, &g);
            }
            assert_eq!(x, f.one());
            assert_eq!(seen.len() as u128, f.order() - 1);
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = FieldTower::new(3, 2);
        let all: Vec<_> = f.elements().collect();
        for a in &all {
            if let Some(inv) = f.inverse(a) {
                assert_eq!(f.mul(a, &inv), f.one());
            } else {
                assert_eq!(a, &f.zero());
            }
            assert_eq!(f.from_index(f.to_index(a)), *a);
            for b in &all {
                let mut out = Vec::new();
                f.mul_into(a, b, &mut out);
                assert_eq!(Element(out), f.mul(a, b));
                assert_eq!(f.sub(&f.add(a, b), b), *a);
            }
        }
        let g = f.generator();
        assert_eq!(f.pow_signed(&g, -3).unwrap(), f.inverse(&f.pow(&g, 3)).unwrap());
        assert!(f.pow_signed(&f.zero(), -1).is_none());
    }

    proptest! {
        #[test]
        fn trace_is_additive_and_frobenius_invariant(
            pd in proptest::sample::select(vec![(2u64, 3usize), (2, 5), (3, 3), (5, 2), (7, 2)]),
            a in any::<u64>(),
            b in any::<u64>(),
        ) {
            let (p, d) = pd;
            let f = FieldTower::new(p, d);
            let x = f.from_index(u128::from(a) % f.order());
            let y = f.from_index(u128::from(b) % f.order());
            let tx = f.absolute_trace(&x).unwrap();
            let ty = f.absolute_trace(&y).unwrap();
            prop_assert_eq!(f.absolute_trace(&f.add(&x, &y)).unwrap(), (tx + ty) % p);
            prop_assert_eq!(f.absolute_trace(&f.pow(&x, u128::from(p))).unwrap(), tx);
            let basis = f.trace_basis();
            let dot = x.0.iter().zip(&basis).map(|(c, t)| c * t).sum::<u64>() % p;
            prop_assert_eq!(dot, tx);
        }
    }
}
