//! Closed-form counting of closed paths by semilength.
//!
//! The counting series S(z) = (1 - z - sqrt(1 - 10z + 9z^2)) / (4z)
//! satisfies S = 1 + 2zS^2 + z(S-1). Under the substitution
//! z = u/((1+u)(1+4u)) it collapses to S = 1 + 2u, which yields an exact
//! coefficient formula in terms of weighted trinomial coefficients and a
//! leading-order coefficient asymptotic with growth base 9.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::checks::CheckReport;
use crate::series::{frac, rat, Polynomial, Rat, RationalFn, Series, SeriesError};

/// A point on the substitution curve z = u/((1+u)(1+4u)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionPoint {
    pub u: Rat,
    pub z: Rat,
}

impl SubstitutionPoint {
    pub fn at(u: Rat) -> Self {
        let one = Rat::one();
        let z = &u / ((&one + &u) * (&one + rat(4) * &u));
        SubstitutionPoint { u, z }
    }
}

/// Leading-order constants for coefficient growth and average height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// Exponential growth base of the coefficients.
    pub growth: f64,
    /// Multiplier in [z^n]S ~ coeff_const * 9^n * n^(-3/2) / sqrt(pi).
    pub coeff_const: f64,
    /// Multiplier in average height ~ height_const * sqrt(pi n).
    pub height_const: f64,
}

pub fn asymptotic_constants() -> AsymptoticConstants {
    let sqrt2 = std::f64::consts::SQRT_2;
    AsymptoticConstants {
        growth: 9.0,
        coeff_const: 3.0 / (2.0 * sqrt2),
        height_const: 2.0 * sqrt2 / 3.0,
    }
}

/// The series of S(z) to the given order, with integrality enforced.
pub fn s_series(order: usize) -> Result<Series, SeriesError> {
    assert!(order >= 1, "s_series needs order >= 1");
    let radicand = Polynomial::from_ints(&[1, -10, 9]).to_series(order + 1);
    let root = radicand.sqrt()?;
    // 1 - z - sqrt(...) has valuation 1, so /(4z) is exact
    let numerator = Polynomial::from_ints(&[1, -1]).to_series(order + 1).sub(&root);
    let s = numerator.div_z_pow(1)?.scale(&frac(1, 4));
    s.assert_integral()?;
    Ok(s)
}

/// Weighted trinomial coefficient [v^k](1 + 5v + 4v^2)^m, as the exact sum
/// over j of 4^j C(m,j) C(m,k-j). Zero outside 0 <= k <= 2m.
pub fn weighted_trinomial(m: usize, k: i64) -> BigInt {
    if k < 0 || k > 2 * m as i64 {
        return BigInt::zero();
    }
    let k = k as usize;
    // running binomial rows: C(m, j) and C(m, k-j)
    let mut total = BigInt::zero();
    let mut pow4 = BigInt::one();
    let mut c_j = BigInt::one(); // C(m, 0)
    for j in 0..=k.min(m) {
        if k - j <= m {
            total += &pow4 * &c_j * binomial(m, k - j);
        }
        pow4 *= 4;
        // C(m, j+1) = C(m, j) * (m - j) / (j + 1)
        if j < m {
            c_j = c_j * BigInt::from(m - j) / BigInt::from(j + 1);
        } else {
            break;
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Exact [z^n]S via the four-term weighted-trinomial formula.
///
/// n = 0 returns 1 by the convention S(0) = 1 (the formula's m = -1 case
/// is undefined).
pub fn s_coefficient(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let m = n - 1;
    let n = n as i64;
    weighted_trinomial(m, n) + 2 * weighted_trinomial(m, n - 1)
        - 4 * weighted_trinomial(m, n - 2)
        - 8 * weighted_trinomial(m, n - 3)
}

/// The substitution z(u) = u/((1+u)(1+4u)) expanded as a u-series.
pub fn z_of_u(order: usize) -> Result<Series, SeriesError> {
    RationalFn::new(
        Polynomial::from_ints(&[0, 1]),
        Polynomial::from_ints(&[1, 5, 4]),
    )
    .expand(order)
}

/// Checks that S(z(u)) = 1 + 2u exactly through u-order `order`.
pub fn substitution_identity_check(order: usize) -> CheckReport {
    let name = "substitution";
    let run = || -> Result<Option<usize>, SeriesError> {
        let s = s_series(order + 1)?;
        let inner = z_of_u(order + 1)?;
        let composed = s.compose(&inner)?;
        let expected = Polynomial::from_ints(&[1, 2]).to_series(order + 1);
        Ok(composed.first_difference(&expected, order))
    };
    match run() {
        Ok(None) => CheckReport::pass(name, order, "S(z(u)) = 1 + 2u"),
        Ok(Some(k)) => CheckReport::fail(name, order, Some(k), "S(z(u)) differs from 1 + 2u"),
        Err(e) => CheckReport::fail(name, order, None, format!("arithmetic failure: {e}")),
    }
}

/// Checks the defining functional equation S = 1 + 2zS^2 + z(S-1).
pub fn functional_equation_check(order: usize) -> CheckReport {
    let name = "functional-equation";
    match s_series(order + 1) {
        Ok(s) => {
            let one = Series::one(order + 1);
            let z = Polynomial::from_ints(&[0, 1]);
            let rhs = one
                .add(&s.mul(&s).mul_poly(&z).scale(&rat(2)))
                .add(&s.sub(&one).mul_poly(&z));
            match s.first_difference(&rhs, order) {
                None => CheckReport::pass(name, order, "S = 1 + 2zS^2 + z(S-1)"),
                Some(k) => CheckReport::fail(name, order, Some(k), "functional equation violated"),
            }
        }
        Err(e) => CheckReport::fail(name, order, None, format!("arithmetic failure: {e}")),
    }
}

/// Natural log of a positive big integer, stable for thousands of bits.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().expect("small integer").ln();
    }
    let shift = bits - 52;
    let head = (x >> shift).to_f64().expect("52-bit head");
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num/den` as f64 via logs; safe when both sides overflow f64.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let num = x.numer().abs();
    let den = x.denom().abs();
    sign * (ln_bigint(&num) - ln_bigint(&den)).exp()
}

/// Natural log of the leading-order estimate of [z^n]S.
pub fn coefficient_asymptotic_ln(n: usize) -> f64 {
    assert!(n >= 1);
    let c = asymptotic_constants();
    (c.coeff_const / std::f64::consts::PI.sqrt()).ln() + n as f64 * c.growth.ln()
        - 1.5 * (n as f64).ln()
}

/// Leading-order estimate (3/(2 sqrt 2)) 9^n n^(-3/2) / sqrt(pi).
///
/// Evaluated in the log domain; overflows to infinity past n ~ 326.
pub fn coefficient_asymptotic(n: usize) -> f64 {
    coefficient_asymptotic_ln(n).exp()
}

/// Exact coefficient divided by its leading-order estimate.
pub fn coefficient_asymptotic_ratio(n: usize) -> f64 {
    let exact = s_coefficient(n);
    (ln_bigint(&exact) - coefficient_asymptotic_ln(n)).exp()
}
