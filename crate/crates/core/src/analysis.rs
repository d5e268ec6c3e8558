//! End-to-end runs over a problem instance, producing serialisable reports.
//! Rationals are rendered as `"num/den"` strings throughout.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::dynamics::{primes_in, PrimeContext};
use crate::error::{Error, Result};
use crate::hodge::{hodge_numbers_for, hodge_polygon_for, newton_polygon_theoretical};
use crate::lattice::{DomainPoint, ExponentMatrix};
use crate::oracle::{self, CyclotomicInteger, EmpiricalRun};
use crate::polygon::{LowerPolygon, Verdict};

/// `f = Σ x^{w_j}` over `F_p`; the columns of `matrix` are the `w_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub p: u64,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl ProblemInstance {
    pub fn context(&self) -> Result<PrimeContext> {
        PrimeContext::new(ExponentMatrix::from_rows(self.matrix.clone())?, self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub u: Vec<i64>,
    pub r: Vec<String>,
    pub weight: String,
}

impl From<&DomainPoint> for PointReport {
    fn from(pt: &DomainPoint) -> Self {
        Self {
            u: pt.u.clone(),
            r: pt.r.to_strings(),
            weight: pt.weight.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub points: Vec<Vec<i64>>,
    pub length: usize,
    pub slope_sum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub u: Vec<i64>,
    pub weight: String,
    pub image: Vec<i64>,
    pub image_weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub vertices: Vec<[String; 2]>,
    pub slopes: Vec<String>,
}

impl From<&LowerPolygon> for PolygonReport {
    fn from(poly: &LowerPolygon) -> Self {
        Self {
            vertices: poly
                .vertices()
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
            slopes: poly.slopes().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub verdict: String,
    pub same_endpoints: bool,
    pub max_gap: String,
}

/// Coefficients of `Σ c_j ζ^j`, `j < p - 1`, as decimal strings.
fn cyclotomic_strings(c: &CyclotomicInteger) -> Vec<String> {
    c.coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalReport {
    /// `S_1, S_2, ...` in the basis `1, ζ, ..., ζ^{p-2}`.
    pub sums: Vec<Vec<String>>,
    pub l_coefficients: Vec<Vec<String>>,
    pub l_is_inverse: bool,
    pub valuations: Vec<Option<String>>,
    pub newton_polygon: PolygonReport,
    pub matches_theory: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub required: String,
    pub limit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instance: ProblemInstance,
    pub det: String,
    pub m: u64,
    pub domain: Vec<PointReport>,
    pub orbits: Vec<OrbitReport>,
    pub stable: bool,
    pub witness: Option<WitnessReport>,
    /// `(k, H(k))` for the nonzero Hodge numbers.
    pub hodge_numbers: Vec<(usize, u64)>,
    pub hodge_polygon: PolygonReport,
    pub newton_polygon: PolygonReport,
    pub comparison: ComparisonReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_exceeded: Option<BudgetReport>,
}

/// The combinatorial side of a run, kept alongside its report.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub context: PrimeContext,
    pub hodge_polygon: LowerPolygon,
    pub newton_polygon: LowerPolygon,
    pub report: Report,
}

pub fn analyze(instance: &ProblemInstance) -> Result<Analysis> {
    let ctx = instance.context()?;
    let domain = ctx.domain();
    let hodge = hodge_numbers_for(domain)?;
    let hp = hodge_polygon_for(domain)?;
    let np = newton_polygon_theoretical(&ctx);
    let cmp = np.compare(&hp)?;
    let stability = ctx.stability();

    let report = Report {
        instance: instance.clone(),
        det: ctx.matrix().det().to_string(),
        m: hodge.m,
        domain: domain.iter().map(PointReport::from).collect(),
        orbits: ctx
            .orbits()
            .iter()
            .map(|o| OrbitReport {
                points: o.points.iter().map(|p| p.u.clone()).collect(),
                length: o.len(),
                slope_sum: o.slope_sum.to_string(),
            })
            .collect(),
        stable: stability.is_stable(),
        witness: stability.witness.as_ref().map(|w| WitnessReport {
            u: w.point.u.clone(),
            weight: w.point.weight.to_string(),
            image: w.image.u.clone(),
            image_weight: w.image.weight.to_string(),
        }),
        hodge_numbers: hodge.nonzero(),
        hodge_polygon: PolygonReport::from(&hp),
        newton_polygon: PolygonReport::from(&np),
        comparison: ComparisonReport {
            verdict: cmp.verdict.as_str().to_string(),
            same_endpoints: cmp.same_endpoints,
            max_gap: cmp.max_gap.to_string(),
        },
        empirical: None,
        budget_exceeded: None,
    };
    Ok(Analysis {
        context: ctx,
        hodge_polygon: hp,
        newton_polygon: np,
        report,
    })
}

/// Outcome of [`verify`]: the analysis, plus the empirical run when it fit
/// in the budget.
#[derive(Clone, Debug)]
pub struct Verification {
    pub analysis: Analysis,
    pub empirical: Option<EmpiricalRun>,
}

impl Verification {
    /// `Some(true)` when the empirical polygon equals the predicted one;
    /// `None` when the oracle was skipped for budget.
    pub fn matches(&self) -> Option<bool> {
        self.empirical
            .as_ref()
            .map(|e| e.newton_polygon == self.analysis.newton_polygon)
    }
}

/// Runs [`analyze`] and then the character-sum oracle. A torus over budget
/// is reported in `budget_exceeded`, not returned as an error.
pub fn verify(instance: &ProblemInstance, budget: u128) -> Result<Verification> {
    let mut analysis = analyze(instance)?;
    let empirical = match oracle::run(&analysis.context, budget, oracle::MIN_SLACK) {
        Ok(run) => Some(run),
        Err(Error::BudgetExceeded { size, limit }) => {
            analysis.report.budget_exceeded = Some(BudgetReport {
                required: size.to_string(),
                limit: limit.to_string(),
            });
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(run) = &empirical {
        analysis.report.empirical = Some(EmpiricalReport {
            sums: run.sums.iter().map(cyclotomic_strings).collect(),
            l_coefficients: run.l_polynomial.coeffs.iter().map(cyclotomic_strings).collect(),
            l_is_inverse: run.l_polynomial.inverted,
            valuations: run
                .l_polynomial
                .valuations()
                .into_iter()
                .map(|(_, v)| v.map(|v| v.to_string()))
                .collect(),
            newton_polygon: PolygonReport::from(&run.newton_polygon),
            matches_theory: run.newton_polygon == analysis.newton_polygon,
        });
    }
    Ok(Verification { analysis, empirical })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    pub stable: bool,
    /// Largest `NP(x) - HP(x)`; zero exactly when the polygons agree.
    pub max_gap: BigRationalString,
}

/// A rational serialised as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BigRationalString(pub String);

impl From<&BigRational> for BigRationalString {
    fn from(x: &BigRational) -> Self {
        Self(x.to_string())
    }
}

/// Stability and polygon gap for every prime in `[p_min, p_max]` not
/// dividing `det J`.
pub fn scan(matrix: &ExponentMatrix, p_min: u64, p_max: u64) -> Result<Vec<ScanRow>> {
    let hp = hodge_polygon_for(&matrix.fundamental_domain()?)?;
    let mut rows = Vec::new();
    for p in primes_in(p_min, p_max) {
        let ctx = match PrimeContext::new(matrix.clone(), p) {
            Ok(ctx) => ctx,
            Err(Error::NotCoprime { .. }) => continue,
            Err(e) => return Err(e),
        };
        let np = newton_polygon_theoretical(&ctx);
        let cmp = np.compare(&hp)?;
        let stable = ctx.is_p_stable();
        debug_assert_eq!(stable, cmp.verdict == Verdict::Equal);
        rows.push(ScanRow {
            p,
            stable,
            max_gap: BigRationalString::from(&cmp.max_gap),
        });
    }
    Ok(rows)
}
