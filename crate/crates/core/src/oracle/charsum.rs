//! Exhaustive character sums `S_i(f) = Σ_{x in T^n(F_{p^i})} ζ^{Tr f(x)}`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::cyclotomic::CyclotomicInteger;
use super::field::{Element, FieldTower};
use crate::dynamics::PrimeContext;
use crate::error::{Error, Result};

/// Default cap on torus points enumerated for a single sum.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `(p^i - 1)^n`, the number of torus points over `F_{p^i}`.
pub fn torus_size(p: u64, degree: usize, n: usize) -> u128 {
    let q = u128::from(p).checked_pow(degree as u32).unwrap_or(u128::MAX);
    (q - 1).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// `N_c = #{x : Tr f(x) = c}` for `c` in `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTally {
    pub counts: Vec<u64>,
}

impl TraceTally {
    fn zero(p: u64) -> Self {
        Self {
            counts: vec![0; p as usize],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| u128::from(c)).sum()
    }

    /// `Σ_c N_c ζ^c`.
    pub fn to_cyclotomic(&self) -> CyclotomicInteger {
        let p = self.counts.len() as u64;
        let powers: Vec<BigInt> = self.counts.iter().map(|&c| BigInt::from(c)).collect();
        CyclotomicInteger::from_powers(p, &powers)
    }
}

fn check_budget(ctx: &PrimeContext, degree: usize, budget: u128) -> Result<()> {
    let size = torus_size(ctx.p(), degree, ctx.matrix().dim());
    if size > budget {
        return Err(Error::BudgetExceeded { size, limit: budget });
    }
    Ok(())
}

/// Tally of `Tr f(x)` over the torus, through discrete logarithms.
///
/// With `g` primitive, `x_k = g^{e_k}` and `x^{w_j} = g^{m_j}` where
/// `m_j = Σ_k e_k J[k][j] mod (q - 1)`; trace is additive, so
/// `Tr f(x) = Σ_j T[m_j]` with `T[e] = Tr(g^e)` tabulated once per field.
pub fn trace_tally(ctx: &PrimeContext, field: &FieldTower, budget: u128) -> Result<TraceTally> {
    check_budget(ctx, field.degree(), budget)?;
    let p = ctx.p();
    let group = (field.order() - 1) as u64;
    let table = trace_of_powers(field);
    let j = ctx.matrix();
    let n = j.dim();
    // step[k][j]: exponent increment of monomial j when e_k increases by one
    let step: Vec<Vec<u64>> = j
        .rows()
        .iter()
        .map(|row| row.iter().map(|&a| a.rem_euclid(group as i64) as u64).collect())
        .collect();

    let tally = (0..group)
        .into_par_iter()
        .fold(
            || TraceTally::zero(p),
            |mut acc, e0| {
                let mut m: Vec<u64> = step[0].iter().map(|&s| (s as u128 * e0 as u128 % group as u128) as u64).collect();
                let mut e = vec![0u64; n];
                loop {
                    let c = m.iter().map(|&mj| table[mj as usize] as u64).sum::<u64>() % p;
                    acc.counts[c as usize] += 1;
                    // odometer over e_1..e_{n-1}, keeping m in sync
                    let mut k = 1;
                    loop {
                        if k == n {
                            return acc;
                        }
                        e[k] += 1;
                        for (mj, &s) in m.iter_mut().zip(&step[k]) {
                            *mj = (*mj + s) % group;
                        }
                        if e[k] < group {
                            break;
                        }
                        e[k] = 0;
                        k += 1;
                    }
                }
            },
        )
        .reduce(|| TraceTally::zero(p), TraceTally::merge);
    Ok(tally)
}

/// `T[e] = Tr(g^e)` for `0 <= e < q - 1`, `g` the field's primitive element.
fn trace_of_powers(field: &FieldTower) -> Vec<u32> {
    let p = field.p();
    let basis = field.trace_basis();
    let g = field.primitive_element();
    let group = (field.order() - 1) as usize;
    let mut table = Vec::with_capacity(group);
    let mut x = field.one();
    let mut scratch = Vec::with_capacity(2 * field.degree());
    for _ in 0..group {
        let t = x.0.iter().zip(&basis).map(|(c, b)| c * b % p).sum::<u64>() % p;
        table.push(t as u32);
        field.mul_into(&x, &g, &mut scratch);
        std::mem::swap(&mut x.0, &mut scratch);
    }
    debug_assert_eq!(x, field.one());
    table
}

/// `S_i(f)` over the field of degree `i` built on the smallest irreducible.
pub fn char_sum(ctx: &PrimeContext, degree: usize, budget: u128) -> Result<CyclotomicInteger> {
    let field = FieldTower::new(ctx.p(), degree);
    Ok(trace_tally(ctx, &field, budget)?.to_cyclotomic())
}

/// Tally by direct evaluation: raise each coordinate to each exponent in the
/// field (inverting for negative exponents), add, and take the trace.
pub fn trace_tally_direct(ctx: &PrimeContext, field: &FieldTower, budget: u128) -> Result<TraceTally> {
    check_budget(ctx, field.degree(), budget)?;
    let j = ctx.matrix();
    let n = j.dim();
    let units: Vec<Element> = field.elements().skip(1).collect();
    let mut tally = TraceTally::zero(ctx.p());
    let mut idx = vec![0usize; n];
    loop {
        let mut value = field.zero();
        for col in j.columns() {
            let mut mono = field.one();
            for (k, &a) in col.iter().enumerate() {
                let pw = field.pow_signed(&units[idx[k]], a).expect("torus points are units");
                mono = field.mul(&mono, &pw);
            }
            value = field.add(&value, &mono);
        }
        let c = field.absolute_trace(&value)?;
        tally.counts[c as usize] += 1;
        let mut k = 0;
        loop {
            if k == n {
                return Ok(tally);
            }
            idx[k] += 1;
            if idx[k] < units.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
