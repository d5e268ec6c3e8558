//! Multiplication by `p` on the fundamental domain, its cycles, and the
//! weight-stability predicate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DomainPoint, ExponentMatrix, FundamentalDomain, RationalVector};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

/// A prime `p` together with an exponent matrix whose determinant it does
/// not divide.
#[derive(Clone, Debug)]
pub struct PrimeContext {
    p: u64,
    domain: FundamentalDomain,
}

impl PrimeContext {
    pub fn new(matrix: ExponentMatrix, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !matrix.det().gcd(&BigInt::from(p)).is_one() {
            return Err(Error::NotCoprime {
                p,
                det: matrix.det().to_string(),
            });
        }
        let domain = matrix.fundamental_domain()?;
        Ok(Self { p, domain })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.domain.matrix
    }

    pub fn domain(&self) -> &FundamentalDomain {
        &self.domain
    }

    /// `p.u = Σ {p r_i} w_i`.
    pub fn p_act(&self, u: &DomainPoint) -> Result<DomainPoint> {
        if !u.r.in_unit_cube() || self.matrix().apply(&u.r).as_deref() != Some(u.u.as_slice()) {
            return Err(Error::NotInDomain(u.u.clone()));
        }
        let p = BigRational::from_integer(BigInt::from(self.p));
        let r = RationalVector(u.r.0.iter().map(|x| (x * &p).fract()).collect());
        let image = self
            .matrix()
            .apply(&r)
            .expect("fractional parts of p*r stay on the lattice");
        let weight = r.sum();
        Ok(DomainPoint { u: image, r, weight })
    }

    /// The permutation `i -> index of p.u_i` on the canonical order.
    pub fn permutation(&self) -> Vec<usize> {
        self.domain
            .iter()
            .map(|pt| {
                let img = self.p_act(pt).expect("domain points are valid");
                self.domain
                    .index_of(&img.u)
                    .expect("p-action preserves the domain")
            })
            .collect()
    }

    /// Cycles of the p-action, sorted by their smallest point; each cycle
    /// starts at that point.
    pub fn orbits(&self) -> Vec<Orbit> {
        let perm = self.permutation();
        let mut visited = vec![false; perm.len()];
        let mut out = Vec::new();
        // canonical order is lexicographic, so the first unvisited index of
        // each cycle is its minimum
        for start in 0..perm.len() {
            if visited[start] {
                continue;
            }
            let mut points = Vec::new();
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                points.push(self.domain.points[i].clone());
                i = perm[i];
            }
            debug_assert_eq!(i, start);
            let slope_sum = points.iter().fold(BigRational::zero(), |acc, p| acc + &p.weight);
            out.push(Orbit { points, slope_sum });
        }
        out
    }

    /// Whether `w(p.u) = w(u)` on the whole domain; on failure, the first
    /// point (canonical order) where it breaks.
    pub fn stability(&self) -> Stability {
        let witness = self.domain.iter().find_map(|pt| {
            let img = self.p_act(pt).expect("domain points are valid");
            (img.weight != pt.weight).then(|| Witness {
                point: pt.clone(),
                image: img,
            })
        });
        Stability { witness }
    }

    pub fn is_p_stable(&self) -> bool {
        self.stability().is_stable()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<DomainPoint>,
    /// `Σ_{i<d} w(p^i.u)`
    pub slope_sum: BigRational,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Average weight along the cycle: the slope of `1 - λ t^d`.
    pub fn slope(&self) -> BigRational {
        &self.slope_sum / BigInt::from(self.len())
    }

    pub fn is_weight_constant(&self) -> bool {
        self.points.windows(2).all(|w| w[0].weight == w[1].weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: DomainPoint,
    pub image: DomainPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub witness: Option<Witness>,
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        self.witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ctx(rows: Vec<Vec<i64>>, p: u64) -> PrimeContext {
        PrimeContext::new(ExponentMatrix::from_rows(rows).unwrap(), p).unwrap()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_in(0, 30).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn context_rejects_bad_primes() {
        let j = ExponentMatrix::from_rows(vec![vec![3]]).unwrap();
        assert_eq!(PrimeContext::new(j.clone(), 4).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            PrimeContext::new(j, 3).unwrap_err(),
            Error::NotCoprime { p: 3, .. }
        ));
        let neg = ExponentMatrix::from_rows(vec![vec![-3]]).unwrap();
        assert!(PrimeContext::new(neg.clone(), 3).is_err());
        assert!(PrimeContext::new(neg, 2).is_ok());
    }

    #[test]
    fn p_act_examples() {
        let c = ctx(vec![vec![3]], 2);
        let one = &c.domain().points[1];
        let img = c.p_act(one).unwrap();
        assert_eq!(img.u, vec![2]);
        assert_eq!(img.r.0, vec![q(2, 3)]);
        let origin = &c.domain().points[0];
        assert_eq!(&c.p_act(origin).unwrap(), origin);

        let c = ctx(vec![vec![1, 1], vec![0, 2]], 3);
        let pt = &c.domain().points[1];
        assert_eq!(c.p_act(pt).unwrap().u, vec![1, 1]);
    }

    #[test]
    fn p_act_rejects_outside_points() {
        let c = ctx(vec![vec![3]], 2);
        let bad = c.matrix().reduce(&[4]).unwrap();
        let outside = DomainPoint {
            u: vec![4],
            r: RationalVector(vec![q(4, 3)]),
            weight: q(4, 3),
        };
        assert!(c.p_act(&bad).is_ok());
        assert_eq!(c.p_act(&outside).unwrap_err(), Error::NotInDomain(vec![4]));
    }

    #[test]
    fn orbit_examples() {
        let c = ctx(vec![vec![3]], 2);
        let orbits = c.orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].len(), 1);
        assert_eq!(orbits[0].slope_sum, q(0, 1));
        let us: Vec<_> = orbits[1].points.iter().map(|p| p.u.clone()).collect();
        assert_eq!(us, vec![vec![1], vec![2]]);
        assert_eq!(orbits[1].slope_sum, q(1, 1));
        assert_eq!(orbits[1].slope(), q(1, 2));

        let c = ctx(vec![vec![3]], 7);
        let sums: Vec<_> = c.orbits().into_iter().map(|o| o.slope_sum).collect();
        assert_eq!(sums, vec![q(0, 1), q(1, 3), q(2, 3)]);

        let c = ctx(vec![vec![1, 1], vec![0, 2]], 3);
        let sums: Vec<_> = c.orbits().into_iter().map(|o| o.slope_sum).collect();
        assert_eq!(sums, vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn stability_examples() {
        assert!(ctx(vec![vec![3]], 7).is_p_stable());
        let s = ctx(vec![vec![3]], 2).stability();
        let w = s.witness.unwrap();
        assert_eq!(w.point.u, vec![1]);
        assert_eq!(w.point.weight, q(1, 3));
        assert_eq!(w.image.weight, q(2, 3));
        assert!(ctx(vec![vec![1, 1], vec![0, 2]], 3).is_p_stable());
    }

    #[test]
    fn p_congruent_to_one_fixes_everything() {
        for d in 2..=12i64 {
            for p in primes_in(2, 60).filter(|p| (*p as i64) % d == 1) {
                let c = ctx(vec![vec![d]], p);
                assert!(c.orbits().iter().all(|o| o.len() == 1), "d={d} p={p}");
                assert!(c.is_p_stable());
            }
        }
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
        fn p_act_is_a_permutation(c in case_strategy()) {
            let mut perm = c.permutation();
            for (i, pt) in c.domain().iter().enumerate() {
                let img = c.p_act(pt).unwrap();
                prop_assert_eq!(&img, &c.matrix().reduce(&pt.u.iter().map(|x| x * c.p() as i64).collect::<Vec<_>>()).unwrap());
                prop_assert_eq!(c.domain().index_of(&img.u), Some(perm[i]));
            }
            perm.sort_unstable();
            prop_assert_eq!(perm, (0..c.domain().len()).collect::<Vec<_>>());
        }

        #[test]
        fn orbits_partition_the_domain(c in case_strategy()) {
            let orbits = c.orbits();
            let total: usize = orbits.iter().map(Orbit::len).sum();
            prop_assert_eq!(total as u64, c.matrix().abs_det());
            for o in &orbits {
                let d = o.len();
                for (k, pt) in o.points.iter().enumerate() {
                    let mut x = pt.clone();
                    for step in 1..=d {
                        x = c.p_act(&x).unwrap();
                        if step < d {
                            prop_assert_ne!(&x, pt);
                        }
                    }
                    prop_assert_eq!(&x, pt);
                    let next = &o.points[(k + 1) % d];
                    prop_assert_eq!(&c.p_act(pt).unwrap(), next);
                }
                let min = o.points.iter().map(|p| &p.u).min().unwrap();
                prop_assert_eq!(min, &o.points[0].u);
            }
            for w in orbits.windows(2) {
                prop_assert!(w[0].points[0].u < w[1].points[0].u);
            }
        }

        #[test]
        fn stability_means_constant_weight_on_orbits(c in case_strategy()) {
            let by_orbit = c.orbits().iter().all(Orbit::is_weight_constant);
            prop_assert_eq!(c.is_p_stable(), by_orbit);
        }
    }
}
