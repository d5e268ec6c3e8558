//! Weight counts `W(l)`, Hodge numbers `H(k)`, and the two polygons they
//! are compared through.
//!
//! `M(f)` decomposes as the disjoint union of translates
//! `s + Z_{>=0} w_1 + ... + Z_{>=0} w_n` over `s` in the fundamental domain,
//! so the number of monoid points of weight `l / M` is
//! `Σ_s C(t + n - 1, n - 1)` over those `s` with `t = l / M - w(s)` a
//! nonnegative integer. `H(k)` is then the `n`-th alternating difference of
//! `W` with step `M`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::dynamics::PrimeContext;
use crate::error::{Error, Result};
use crate::lattice::{ExponentMatrix, FundamentalDomain};
use crate::polygon::LowerPolygon;

/// `M * w(s)` for every point of the domain.
fn scaled_weights(domain: &FundamentalDomain, m: u64) -> Vec<i64> {
    let m = BigRational::from_integer(BigInt::from(m));
    domain
        .iter()
        .map(|pt| {
            let x = &pt.weight * &m;
            debug_assert!(x.is_integer());
            x.to_integer().to_i64().expect("scaled weight is small")
        })
        .collect()
}

fn w_closed_form(scaled: &[i64], n: usize, m: u64, l: i64) -> BigInt {
    if l < 0 {
        return BigInt::zero();
    }
    let m = m as i64;
    scaled
        .iter()
        .filter(|&&s| l >= s && (l - s) % m == 0)
        .map(|&s| {
            let t = BigInt::from((l - s) / m);
            binomial(t + BigInt::from(n - 1), BigInt::from(n - 1))
        })
        .sum()
}

/// `W(l) = #{u in M(f) : w(u) = l / M}`.
pub fn count_w(j: &ExponentMatrix, l: i64) -> Result<BigInt> {
    let domain = j.fundamental_domain()?;
    let m = j.denominator_m();
    Ok(w_closed_form(&scaled_weights(&domain, m), j.dim(), m, l))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    pub n: usize,
    pub m: u64,
    /// `H(k)` for `0 <= k <= n M`; zero beyond.
    pub h: Vec<u64>,
    /// `W(l)` for every `l` the alternating sums touched.
    pub w: BTreeMap<i64, BigInt>,
}

impl HodgeData {
    pub fn h_at(&self, k: i64) -> u64 {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.h.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.h.iter().sum()
    }

    /// `(k, H(k))` for the nonzero Hodge numbers.
    pub fn nonzero(&self) -> Vec<(usize, u64)> {
        self.h
            .iter()
            .enumerate()
            .filter(|(_, &h)| h > 0)
            .map(|(k, &h)| (k, h))
            .collect()
    }
}

/// `Σ_{l=0}^{n} (-1)^l C(n, l) W(k - l M)`, memoising `W`.
fn alternating_sum(
    k: i64,
    n: usize,
    m: u64,
    scaled: &[i64],
    memo: &mut BTreeMap<i64, BigInt>,
) -> BigInt {
    (0..=n)
        .map(|l| {
            let arg = k - (l as i64) * (m as i64);
            let w = memo
                .entry(arg)
                .or_insert_with(|| w_closed_form(scaled, n, m, arg))
                .clone();
            let c = binomial(BigInt::from(n), BigInt::from(l));
            if l % 2 == 0 {
                c * w
            } else {
                -(c * w)
            }
        })
        .sum()
}

/// Hodge numbers from the alternating formula, checked against the direct
/// count of domain points by scaled weight.
pub fn hodge_numbers(j: &ExponentMatrix) -> Result<HodgeData> {
    let domain = j.fundamental_domain()?;
    hodge_numbers_for(&domain)
}

pub fn hodge_numbers_for(domain: &FundamentalDomain) -> Result<HodgeData> {
    let j = &domain.matrix;
    let n = j.dim();
    let m = j.denominator_m();
    let top = n as i64 * m as i64;
    let scaled = scaled_weights(domain, m);
    let mut memo = BTreeMap::new();

    let mut h = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let v = alternating_sum(k, n, m, &scaled, &mut memo);
        let v = v
            .to_u64()
            .ok_or_else(|| Error::HodgeMismatch(format!("H({k}) = {v} is negative")))?;
        h.push(v);
    }
    // one full period past n M must vanish
    for k in top + 1..=top + m as i64 {
        let v = alternating_sum(k, n, m, &scaled, &mut memo);
        if !v.is_zero() {
            return Err(Error::HodgeMismatch(format!("H({k}) = {v}, expected 0 past nM = {top}")));
        }
    }

    let mut direct = vec![0u64; top as usize + 1];
    for &s in &scaled {
        let slot = direct
            .get_mut(s as usize)
            .ok_or_else(|| Error::HodgeMismatch(format!("scaled weight {s} exceeds nM = {top}")))?;
        *slot += 1;
    }
    if direct != h {
        return Err(Error::HodgeMismatch(format!(
            "alternating sums {h:?} vs domain weight counts {direct:?}"
        )));
    }
    if h.iter().sum::<u64>() != j.abs_det() {
        return Err(Error::HodgeMismatch(format!(
            "sum of H(k) is {}, |det J| = {}",
            h.iter().sum::<u64>(),
            j.abs_det()
        )));
    }
    Ok(HodgeData { n, m, h, w: memo })
}

/// The Hodge polygon with vertices `(Σ_{k<=i} H(k), (1/M) Σ_{k<=i} k H(k))`,
/// checked against the polygon whose slopes are the domain weights.
pub fn hodge_polygon(j: &ExponentMatrix) -> Result<LowerPolygon> {
    let domain = j.fundamental_domain()?;
    hodge_polygon_for(&domain)
}

pub fn hodge_polygon_for(domain: &FundamentalDomain) -> Result<LowerPolygon> {
    let data = hodge_numbers_for(domain)?;
    let m = BigInt::from(data.m);
    let mut slopes = Vec::new();
    for (k, &count) in data.h.iter().enumerate() {
        let slope = BigRational::new(BigInt::from(k), m.clone());
        slopes.extend(std::iter::repeat_n(slope, count as usize));
    }
    let from_h = LowerPolygon::from_slopes(slopes);
    let from_weights = LowerPolygon::from_slopes(domain.weights());
    if from_h != from_weights {
        return Err(Error::HodgeMismatch(
            "polygon from H(k) differs from polygon of domain weights".into(),
        ));
    }
    Ok(from_h)
}

/// Each orbit of length `d` and slope sum `σ` contributes `d` slopes `σ / d`.
pub fn newton_polygon_theoretical(ctx: &PrimeContext) -> LowerPolygon {
    let mut slopes = Vec::new();
    for orbit in ctx.orbits() {
        slopes.extend(std::iter::repeat_n(orbit.slope(), orbit.len()));
    }
    LowerPolygon::from_slopes(slopes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Verdict;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mat(rows: Vec<Vec<i64>>) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    /// Counts monoid points of weight `l / M` inside a box that covers them:
    /// `|u|_inf <= (l / M) max_i |w_i|_inf`.
    fn w_brute_force(j: &ExponentMatrix, l: i64) -> u64 {
        if l < 0 {
            return 0;
        }
        let m = j.denominator_m() as i64;
        let n = j.dim();
        let max_col = j.rows().iter().flatten().map(|x| x.abs()).max().unwrap();
        let bound = (l * max_col + m - 1) / m;
        let target = q(l, m);
        let mut u = vec![-bound; n];
        let mut count = 0;
        loop {
            let r = j.coords(&u).unwrap();
            if r.is_nonnegative() && r.sum() == target {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                u[i] += 1;
                if u[i] <= bound {
                    break;
                }
                u[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn w_examples() {
        let j = mat(vec![vec![3]]);
        for l in 0..10 {
            assert_eq!(count_w(&j, l).unwrap(), BigInt::from(1));
        }
        let j = mat(vec![vec![1, 1], vec![0, 2]]);
        for l in 0..=6 {
            assert_eq!(w_brute_force(&j, l), 2 * l as u64 + 1);
            assert_eq!(count_w(&j, l).unwrap(), BigInt::from(2 * l + 1));
        }
        assert!(count_w(&j, -1).unwrap().is_zero());
        assert!(count_w(&ExponentMatrix::identity(3), -5).unwrap().is_zero());
    }

    #[test]
    fn w_matches_brute_force_on_skewed_matrices() {
        for rows in [
            vec![vec![2, -1], vec![1, 3]],
            vec![vec![-2, 1], vec![1, 2]],
            vec![vec![1, 0, 1], vec![0, 2, 1], vec![1, 1, -1]],
        ] {
            let j = mat(rows);
            let m = j.denominator_m() as i64;
            for l in 0..=3 * m {
                assert_eq!(count_w(&j, l).unwrap(), BigInt::from(w_brute_force(&j, l)), "l = {l}");
            }
        }
    }

    #[test]
    fn hodge_number_examples() {
        let h = hodge_numbers(&mat(vec![vec![3]])).unwrap();
        assert_eq!(h.m, 3);
        assert_eq!(h.h, vec![1, 1, 1, 0]);
        let h = hodge_numbers(&mat(vec![vec![1, 1], vec![0, 2]])).unwrap();
        assert_eq!(h.h, vec![1, 1, 0]);
        assert_eq!(h.w[&2], BigInt::from(5));
        let h = hodge_numbers(&ExponentMatrix::identity(2)).unwrap();
        assert_eq!(h.h, vec![1, 0, 0]);
        assert_eq!(h.h_at(-1), 0);
        assert_eq!(h.h_at(100), 0);
    }

    #[test]
    fn hodge_polygon_examples() {
        let hp = hodge_polygon(&mat(vec![vec![3]])).unwrap();
        assert_eq!(
            hp.vertices(),
            &[(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(2, 1), q(1, 3)), (q(3, 1), q(1, 1))]
        );
        assert_eq!(hp.slopes(), vec![q(0, 1), q(1, 3), q(2, 3)]);
        let hp = hodge_polygon(&mat(vec![vec![1, 1], vec![0, 2]])).unwrap();
        assert_eq!(hp.vertices(), &[(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(2, 1), q(1, 1))]);
        let hp = hodge_polygon(&mat(vec![vec![2]])).unwrap();
        assert_eq!(hp.slopes(), vec![q(0, 1), q(1, 2)]);
    }

    #[test]
    fn theoretical_newton_examples() {
        let ctx = |rows, p| PrimeContext::new(mat(rows), p).unwrap();
        let np = newton_polygon_theoretical(&ctx(vec![vec![3]], 2));
        assert_eq!(np.slopes(), vec![q(0, 1), q(1, 2), q(1, 2)]);
        let np = newton_polygon_theoretical(&ctx(vec![vec![3]], 7));
        assert_eq!(np.slopes(), vec![q(0, 1), q(1, 3), q(2, 3)]);
        let np = newton_polygon_theoretical(&ctx(vec![vec![1, 1], vec![0, 2]], 3));
        assert_eq!(np.slopes(), vec![q(0, 1), q(1, 1)]);
    }

    fn case_strategy() -> impl Strategy<Value = PrimeContext> {
        (1usize..=3, proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13]))
            .prop_flat_map(|(n, p)| {
                proptest::collection::vec(-3i64..=3, n * n).prop_map(move |e| (n, p, e))
            })
            .prop_filter_map("singular, large, or not coprime", |(n, p, e)| {
                let j = ExponentMatrix::from_rows(e.chunks(n).map(<[i64]>::to_vec).collect()).ok()?;
                if j.abs_det() > 10 {
                    return None;
                }
                PrimeContext::new(j, p).ok()
            })
    }

    proptest! {
        #[test]
        fn hodge_invariants(ctx in case_strategy()) {
            let j = ctx.matrix();
            let h = hodge_numbers(j).unwrap();
            prop_assert_eq!(h.total(), j.abs_det());
            prop_assert_eq!(h.h.len() as u64, j.dim() as u64 * h.m + 1);
            let hp = hodge_polygon(j).unwrap();
            let mut weights = ctx.domain().weights();
            weights.sort();
            prop_assert_eq!(hp.slopes(), weights);
        }

        #[test]
        fn newton_dominates_hodge(ctx in case_strategy()) {
            let hp = hodge_polygon(ctx.matrix()).unwrap();
            let np = newton_polygon_theoretical(&ctx);
            prop_assert_eq!(np.end(), hp.end());
            prop_assert_eq!(&np.end().1, &ctx.domain().total_weight());
            let c = np.compare(&hp).unwrap();
            prop_assert!(c.verdict != Verdict::Incomparable);
            prop_assert!(!c.max_gap.is_negative());
            prop_assert_eq!(c.verdict == Verdict::Equal, ctx.is_p_stable());
        }
    }
}
