//! Newton and Hodge polygons for L-functions of diagonal exponential sums
//! `f = x^{w_1} + ... + x^{w_n}` over `F_p`.
//!
//! The combinatorial side ([`lattice`], [`dynamics`], [`hodge`]) predicts the
//! Newton polygon from the action of `p` on the fundamental domain of the
//! exponent lattice. The [`oracle`] computes the same polygon from exact
//! character sums, with no reference to that combinatorics.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod hodge;
pub mod lattice;
pub mod oracle;
pub mod polygon;

pub use analysis::{analyze, scan, verify, ProblemInstance, Report};
pub use dynamics::{Orbit, PrimeContext, Stability};
pub use error::{Error, Result};
pub use hodge::{count_w, hodge_numbers, hodge_polygon, newton_polygon_theoretical, HodgeData};
pub use lattice::{det_and_adjugate, smith_normal_form, DomainPoint, ExponentMatrix, FundamentalDomain, RationalVector};
pub use polygon::{Comparison, LowerPolygon, Valuation, Verdict};
