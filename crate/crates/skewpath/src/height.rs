//! Bounded-height generating functions, exact height distributions and
//! the average-height asymptotics.
//!
//! S_h, the counting series of closed paths of height at most h, is the
//! rational function p_h/q_h produced by
//!
//! ```text
//!   p_0 = q_0 = 1,
//!   p_h = (1-z) q_{h-1} + z p_{h-1},
//!   q_h = q_{h-1} - 2z p_{h-1},
//! ```
//!
//! kept unreduced. Differencing consecutive S_h gives exact counts by
//! height; summing the tails S - S_h gives the exact average height,
//! which approaches (2 sqrt 2 / 3) sqrt(pi n) for large semilength n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::checks::CheckReport;
use crate::closed_form::{s_coefficient, s_series, z_of_u};
use crate::path::HeightDistribution;
use crate::series::{rat, Polynomial, Rat, RationalFn, Series, SeriesError};

/// The counting series of paths of height at most `h`, as the unreduced
/// fraction p/q from the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedHeightGf {
    h: usize,
    p: Polynomial,
    q: Polynomial,
}

impl BoundedHeightGf {
    pub fn height_bound(&self) -> usize {
        self.h
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.p
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.q
    }

    pub fn to_ratfn(&self) -> RationalFn {
        RationalFn::new(self.p.clone(), self.q.clone())
    }

    /// Series expansion of p/q to the given order.
    pub fn series(&self, order: usize) -> Result<Series, SeriesError> {
        self.to_ratfn().expand(order)
    }
}

/// S_h = p_h / q_h for one height bound.
pub fn sh_ratfn(h: usize) -> BoundedHeightGf {
    sh_family(h).pop().expect("nonempty family")
}

/// The whole family S_0 .. S_h_max; one recursion pass, shared by the
/// distribution and average-height computations.
pub fn sh_family(h_max: usize) -> Vec<BoundedHeightGf> {
    let mut family = Vec::with_capacity(h_max + 1);
    family.push(BoundedHeightGf {
        h: 0,
        p: Polynomial::one(),
        q: Polynomial::one(),
    });
    let one_minus_z = Polynomial::from_ints(&[1, -1]);
    let z = Polynomial::from_ints(&[0, 1]);
    let minus_2z = Polynomial::from_ints(&[0, -2]);
    for h in 1..=h_max {
        let prev = family.last().expect("previous element");
        let p = one_minus_z.mul(&prev.q).add(&z.mul(&prev.p));
        let q = prev.q.add(&minus_2z.mul(&prev.p));
        family.push(BoundedHeightGf { h, p, q });
    }
    family
}

/// `[z^n] S_h` for every h in 0..=n, as exact integers.
///
/// The per-h expansions are independent; they run in parallel.
pub fn sh_nth_coefficients(n: usize) -> Vec<BigInt> {
    let family = sh_family(n);
    family
        .par_iter()
        .map(|gf| {
            let series = gf.series(n + 1).expect("unit denominator constant");
            let c = series.coeff(n);
            assert!(c.is_integer(), "S_{} coefficient not integral", gf.h);
            c.to_integer()
        })
        .collect()
}

/// `[z^n] S_h` for every n in 0..=n_max and h in 0..=n_max: one family
/// pass shared across sizes. Row h holds the coefficients of S_h.
fn sh_coefficient_rows(n_max: usize) -> Vec<Vec<BigInt>> {
    let family = sh_family(n_max);
    family
        .par_iter()
        .map(|gf| {
            gf.series(n_max + 1)
                .expect("unit denominator constant")
                .to_integers()
                .expect("bounded-height counts are integers")
        })
        .collect()
}

/// Exact counts of closed paths of semilength `n` by height, obtained by
/// differencing the bounded-height family.
pub fn height_distribution(n: usize) -> HeightDistribution {
    let mut dist = HeightDistribution::new(n);
    if n == 0 {
        dist.record(0);
        return dist;
    }
    let coeffs = sh_nth_coefficients(n);
    let mut counts = std::collections::BTreeMap::new();
    for h in 1..=n {
        let diff = &coeffs[h] - &coeffs[h - 1];
        assert!(diff >= BigInt::zero(), "S_h coefficients must be monotone");
        if !diff.is_zero() {
            counts.insert(h, diff.to_biguint().expect("nonnegative"));
        }
    }
    HeightDistribution::from_counts(n, counts)
}

/// Exact average height of paths of semilength `n`, all paths equally
/// likely. Computed both as sum(h * count_h)/total and as
/// sum_h (total - [z^n]S_h)/total; the two must agree.
pub fn average_height_exact(n: usize) -> Rat {
    assert!(n >= 1);
    average_from_coeffs(n, &sh_nth_coefficients(n))
}

/// Exact averages at several semilengths off one shared family pass;
/// costs no more than the largest requested size alone.
pub fn average_height_exact_many(ns: &[usize]) -> Vec<(usize, Rat)> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let rows = sh_coefficient_rows(n_max);
    ns.iter()
        .map(|&n| {
            assert!(n >= 1);
            let coeffs: Vec<BigInt> = (0..=n).map(|h| rows[h][n].clone()).collect();
            (n, average_from_coeffs(n, &coeffs))
        })
        .collect()
}

fn average_from_coeffs(n: usize, coeffs: &[BigInt]) -> Rat {
    let total = s_coefficient(n);
    assert_eq!(coeffs[n], total, "S_n must have stabilized at height n");

    let by_distribution: BigInt = (1..=n)
        .map(|h| BigInt::from(h) * (&coeffs[h] - &coeffs[h - 1]))
        .sum();
    let by_tails: BigInt = (0..n).map(|h| &total - &coeffs[h]).sum();
    assert_eq!(by_distribution, by_tails, "summation identities disagree");

    BigRational::new(by_tails, total)
}

/// Leading-order average height (2 sqrt 2 / 3) sqrt(pi n).
pub fn average_height_asymptotic(n: usize) -> f64 {
    assert!(n >= 1);
    crate::closed_form::asymptotic_constants().height_const
        * (std::f64::consts::PI * n as f64).sqrt()
}

/// Exact average divided by its asymptotic estimate.
pub fn average_height_ratio(n: usize) -> f64 {
    crate::closed_form::rational_to_f64(&average_height_exact(n)) / average_height_asymptotic(n)
}

/// A point on lambda(u) = (4u+3)u / (3u+1); lambda(1/2) = 1 marks the
/// singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPoint {
    pub u: Rat,
    pub lambda: Rat,
}

impl LambdaPoint {
    pub fn at(u: Rat) -> Self {
        let lambda = (rat(4) * &u + rat(3)) * &u / (rat(3) * &u + rat(1));
        LambdaPoint { u, lambda }
    }
}

/// lambda(u) as a u-series.
pub fn lambda_of_u(order: usize) -> Result<Series, SeriesError> {
    RationalFn::new(
        Polynomial::from_ints(&[0, 3, 4]),
        Polynomial::from_ints(&[1, 3]),
    )
    .expand(order)
}

/// Checks the tail identity: composing S - S_h with z(u) equals
/// ((1-4u^2)/(2u)) * 4u^2 lambda^h / (1 - 4u^2 lambda^h) as u-series.
pub fn tail_formula_check(h: usize, order: usize) -> CheckReport {
    let name = "tail-formula";
    let run = || -> Result<Option<usize>, SeriesError> {
        let w = order + 2;
        // right-hand side
        let lam_h = lambda_of_u(w)?.pow(h);
        let t = lam_h.mul_poly(&Polynomial::monomial(rat(4), 2)).truncated(w);
        let geom = Series::one(w).sub(&t).recip()?;
        let rhs = t
            .mul(&geom)
            .mul_poly(&Polynomial::from_ints(&[1, 0, -4]))
            .div_z_pow(1)?
            .scale(&crate::series::frac(1, 2));
        // left-hand side through the substitution
        let tail_in_z = s_series(w)?.sub(&sh_ratfn(h).series(w)?);
        let lhs = tail_in_z.compose(&z_of_u(w)?)?;
        Ok(lhs.first_difference(&rhs, order))
    };
    match run() {
        Ok(None) => CheckReport::pass(name, order, format!("tail identity at h={h}")),
        Ok(Some(k)) => CheckReport::fail(
            name,
            order,
            Some(k),
            format!("tail identity fails at h={h}"),
        ),
        Err(e) => CheckReport::fail(name, order, None, format!("arithmetic failure: {e}")),
    }
}

/// Checks the closed u-forms of p_h and q_h against the recursion
/// output composed with z(u):
/// p_h(z(u)) = (B^h - 2u A^h)/(1-2u), q_h(z(u)) = (B^h - 4u^2 A^h)/(1-4u^2),
/// with A = (4u+3)u/((1+u)(1+4u)) and B = (3u+1)/((1+u)(1+4u)).
pub fn ph_qh_closed_check(h: usize, order: usize) -> CheckReport {
    let name = "ph-qh";
    let run = || -> Result<Vec<CheckReport>, SeriesError> {
        let w = order + 2;
        let denom = Polynomial::from_ints(&[1, 5, 4]);
        let a_pow = RationalFn::new(Polynomial::from_ints(&[0, 3, 4]), denom.clone())
            .expand(w)?
            .pow(h);
        let b_pow = RationalFn::new(Polynomial::from_ints(&[1, 3]), denom)
            .expand(w)?
            .pow(h);
        let inv_1m2u = RationalFn::new(Polynomial::one(), Polynomial::from_ints(&[1, -2]))
            .expand(w)?;
        let inv_1m4u2 = RationalFn::new(Polynomial::one(), Polynomial::from_ints(&[1, 0, -4]))
            .expand(w)?;

        let p_closed = b_pow
            .sub(&a_pow.mul_poly(&Polynomial::from_ints(&[0, 2])).truncated(w))
            .mul(&inv_1m2u);
        let q_closed = b_pow
            .sub(&a_pow.mul_poly(&Polynomial::monomial(rat(4), 2)).truncated(w))
            .mul(&inv_1m4u2);

        let gf = sh_ratfn(h);
        let inner = z_of_u(w)?;
        let p_direct = gf.numerator().to_series(w).compose(&inner)?;
        let q_direct = gf.denominator().to_series(w).compose(&inner)?;

        Ok(vec![
            match p_direct.first_difference(&p_closed, order) {
                None => CheckReport::pass(name, order, format!("p closed form at h={h}")),
                Some(k) => {
                    CheckReport::fail(name, order, Some(k), format!("p closed form fails at h={h}"))
                }
            },
            match q_direct.first_difference(&q_closed, order) {
                None => CheckReport::pass(name, order, format!("q closed form at h={h}")),
                Some(k) => {
                    CheckReport::fail(name, order, Some(k), format!("q closed form fails at h={h}"))
                }
            },
        ])
    };
    match run() {
        Ok(parts) => CheckReport::combine(name, order, parts),
        Err(e) => CheckReport::fail(name, order, None, format!("arithmetic failure: {e}")),
    }
}
