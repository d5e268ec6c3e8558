//! Empirical Newton polygons from exact character sums.
//!
//! Nothing here consults the fundamental domain or its weights: the sums are
//! enumerated over finite fields, exponentiated as power series over
//! `Z[ζ_p]`, and the polygon is read off from `(1 - ζ_p)`-adic valuations.

mod charsum;
mod cyclotomic;
mod field;
mod lfunction;

pub use charsum::{char_sum, torus_size, trace_tally, trace_tally_direct, TraceTally, DEFAULT_BUDGET};
pub use cyclotomic::CyclotomicInteger;
pub use field::{is_irreducible, Element, FieldTower};
pub use lfunction::{l_polynomial, newton_polygon_empirical, LPolynomial, MIN_SLACK};

use crate::dynamics::PrimeContext;
use crate::error::{Error, Result};
use crate::polygon::LowerPolygon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalRun {
    /// `S_1, ..., S_{D + slack}`.
    pub sums: Vec<CyclotomicInteger>,
    pub l_polynomial: LPolynomial,
    pub newton_polygon: LowerPolygon,
}

/// Largest torus enumerated when certifying with `slack` extra sums.
pub fn verification_cost(ctx: &PrimeContext, slack: usize) -> u128 {
    let top = ctx.matrix().abs_det() as usize + slack;
    torus_size(ctx.p(), top, ctx.matrix().dim())
}

/// Computes `S_1..S_{D+slack}`, the L-polynomial, and its Newton polygon.
/// Fails with [`Error::BudgetExceeded`] before doing any work when the
/// largest torus is over budget.
pub fn run(ctx: &PrimeContext, budget: u128, slack: usize) -> Result<EmpiricalRun> {
    let slack = slack.max(MIN_SLACK);
    let cost = verification_cost(ctx, slack);
    if cost > budget {
        return Err(Error::BudgetExceeded { size: cost, limit: budget });
    }
    let top = ctx.matrix().abs_det() as usize + slack;
    let sums = (1..=top)
        .map(|i| char_sum(ctx, i, budget))
        .collect::<Result<Vec<_>>>()?;
    let l_polynomial = l_polynomial(ctx, &sums)?;
    let newton_polygon = newton_polygon_empirical(&l_polynomial)?;
    Ok(EmpiricalRun {
        sums,
        l_polynomial,
        newton_polygon,
    })
}
