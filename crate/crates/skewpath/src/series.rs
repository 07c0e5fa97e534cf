//! Truncated formal power series and polynomials over exact rationals.
//!
//! A [`Series`] of order `N` knows the coefficients of `z^0 .. z^(N-1)`
//! exactly; coefficients at `z^N` and beyond are *unknown*, not zero.
//! Arithmetic never fabricates coefficients past what the operands
//! support: binary operations truncate to the smaller order.

use std::cmp::min;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// Reciprocal of a series whose constant term vanishes.
    #[error("series has zero constant term and is not invertible")]
    NonUnitConstantTerm,
    /// Square root requires constant term exactly 1.
    #[error("series square root requires constant term 1, found {found}")]
    BadConstantTerm { found: String },
    /// Composition `outer(inner)` requires `inner` to have valuation >= 1.
    #[error("composition requires the inner series to have zero constant term")]
    NonzeroInnerConstant,
    /// An exact division by a power of z hit a nonzero low-order coefficient.
    #[error("coefficient of z^{index} is nonzero; exact division by z^{shift} fails")]
    DivisibilityViolation { index: usize, shift: usize },
    /// An export that promises integer coefficients found a fraction.
    #[error("coefficient of z^{index} is {value}, not an integer")]
    IntegralityViolation { index: usize, value: String },
}

/// Truncated power series with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// Series from explicit coefficients; the order is `coeffs.len()`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Series { coeffs }
    }

    /// Series with the given integer coefficients, order `coeffs.len()`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Series {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
        }
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order],
        }
    }

    /// The constant series 1 of the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    /// A constant series of the given order.
    pub fn constant(c: Rat, order: usize) -> Self {
        assert!(order > 0, "a constant series needs order >= 1");
        let mut coeffs = vec![Rat::zero(); order];
        coeffs[0] = c;
        Series { coeffs }
    }

    /// The monomial z of the given order.
    pub fn z(order: usize) -> Self {
        assert!(order > 1, "the monomial z needs order >= 2");
        let mut coeffs = vec![Rat::zero(); order];
        coeffs[1] = Rat::one();
        Series { coeffs }
    }

    /// Truncation order: coefficients are known for exponents `< order`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `z^k`. Panics if `k` is at or past the order.
    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    /// Coefficient of `z^k` if known.
    pub fn get(&self, k: usize) -> Option<&Rat> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Index of the first nonzero known coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when coefficients `z^0 ..= z^through` are all known and zero.
    pub fn is_zero_through(&self, through: usize) -> bool {
        through < self.order() && self.coeffs[..=through].iter().all(|c| c.is_zero())
    }

    /// First index `<= through` where the two series differ.
    pub fn first_difference(&self, other: &Series, through: usize) -> Option<usize> {
        assert!(
            through < self.order() && through < other.order(),
            "comparison through z^{} exceeds the known orders {} and {}",
            through,
            self.order(),
            other.order()
        );
        (0..=through).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Shrink to the given order (no-op if already shorter).
    pub fn truncated(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order);
        Series { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `z^shift`; the `shift` new leading coefficients are exact.
    pub fn mul_z_pow(&self, shift: usize) -> Series {
        let mut coeffs = vec![Rat::zero(); shift];
        coeffs.extend_from_slice(&self.coeffs);
        Series { coeffs }
    }

    /// Exact division by `z^shift`; fails unless the low coefficients vanish.
    pub fn div_z_pow(&self, shift: usize) -> Result<Series, SeriesError> {
        for k in 0..min(shift, self.order()) {
            if !self.coeffs[k].is_zero() {
                return Err(SeriesError::DivisibilityViolation { index: k, shift });
            }
        }
        Ok(Series {
            coeffs: self.coeffs[min(shift, self.order())..].to_vec(),
        })
    }

    /// Product with a polynomial. The result order grows by the polynomial's
    /// valuation (multiplying by z genuinely extends what is known).
    pub fn mul_poly(&self, p: &Polynomial) -> Series {
        if p.is_zero() || self.order() == 0 {
            return Series::zero(self.order());
        }
        let val = p.valuation().expect("nonzero polynomial");
        let order = self.order() + val;
        let mut coeffs = vec![Rat::zero(); order];
        for (j, pj) in p.coeffs().iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            for (i, ai) in self.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= order {
                    break;
                }
                if !ai.is_zero() {
                    coeffs[k] += ai * pj;
                }
            }
        }
        Series { coeffs }
    }

    /// Truncated Cauchy product; order is the smaller operand order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = min(self.order(), other.order());
        let mut coeffs = vec![Rat::zero(); order];
        for (i, ai) in self.coeffs.iter().enumerate().take(order) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate().take(order - i) {
                if !bj.is_zero() {
                    coeffs[i + j] += ai * bj;
                }
            }
        }
        Series { coeffs }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = min(self.order(), other.order());
        Series {
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = min(self.order(), other.order());
        Series {
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse to the same order.
    pub fn recip(&self) -> Result<Series, SeriesError> {
        if self.order() == 0 || self.coeffs[0].is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let a0_inv = self.coeffs[0].recip();
        let mut b = Vec::with_capacity(self.order());
        b.push(a0_inv.clone());
        for k in 1..self.order() {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &b[k - j];
                }
            }
            b.push(-acc * &a0_inv);
        }
        Ok(Series { coeffs: b })
    }

    /// Square root with constant term 1, by the direct coefficient
    /// recurrence from b^2 = a.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if self.order() == 0 || !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm {
                found: self
                    .coeffs
                    .first()
                    .map_or_else(|| "<empty>".to_string(), |c| c.to_string()),
            });
        }
        let mut b: Vec<Rat> = Vec::with_capacity(self.order());
        b.push(Rat::one());
        let half = frac(1, 2);
        for k in 1..self.order() {
            // a_k = 2 b_0 b_k + sum_{j=1..k-1} b_j b_{k-j}, with b_0 = 1
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &b[j] * &b[k - j];
            }
            b.push(acc * &half);
        }
        Ok(Series { coeffs: b })
    }

    /// Composition `self(inner)`; `inner` must have valuation >= 1.
    ///
    /// Evaluated by Horner over truncated series. The achievable order is
    /// `min(inner.order, self.order * valuation(inner))`.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if inner.order() > 0 && !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let val = inner.valuation().unwrap_or(inner.order()).max(1);
        let order = min(inner.order(), self.order().saturating_mul(val));
        if order == 0 {
            return Ok(Series::zero(0));
        }
        let inner_t = inner.truncated(order);
        let mut acc = Series::zero(order);
        for k in (0..self.order()).rev() {
            acc = acc.mul(&inner_t);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Integer power by repeated multiplication (order preserved).
    pub fn pow(&self, exp: usize) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Export as integers; errors loudly on the first fractional coefficient.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::IntegralityViolation {
                        index,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Check that every known coefficient is an integer.
    pub fn assert_integral(&self) -> Result<(), SeriesError> {
        self.to_integers().map(|_| ())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

// Wire format: {"order": N, "coeffs": ["p/q", ...]} with exact round-trip.
impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            order: usize,
            coeffs: Vec<String>,
        }
        Wire {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            order: usize,
            coeffs: Vec<String>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.order {
            return Err(D::Error::custom(format!(
                "series order {} does not match {} coefficients",
                wire.order,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| Rat::from_str(s).map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series { coeffs })
    }
}

/// Dense polynomial with exact rational coefficients.
///
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest nonzero degree, or None for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul_z_pow(&self, shift: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); shift];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// View as a truncated series of the given order.
    pub fn to_series(&self, order: usize) -> Series {
        let mut coeffs = vec![Rat::zero(); order];
        for (k, c) in self.coeffs.iter().enumerate().take(order) {
            coeffs[k] = c.clone();
        }
        Series::from_coeffs(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let as_series = Series::from_coeffs(self.coeffs.clone());
        // reuse the series term formatting, without the O() tail
        let rendered = as_series.to_string();
        let term = rendered
            .rsplit_once(" + O(")
            .map(|(head, _)| head)
            .unwrap_or(&rendered);
        write!(f, "{term}")
    }
}

/// Quotient of two polynomials, kept unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFn {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        RationalFn { num, den }
    }

    /// Series of num/den to the given order.
    ///
    /// Uses the linear recurrence driven by the denominator, so the cost is
    /// O(order * deg den) rather than a generic O(order^2) reciprocal.
    pub fn expand(&self, order: usize) -> Result<Series, SeriesError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let d0_inv = d0.recip();
        let deg_d = self.den.degree().unwrap_or(0);
        let mut out: Vec<Rat> = Vec::with_capacity(order);
        for k in 0..order {
            // den * out = num  =>  out_k = (num_k - sum_{j>=1} den_j out_{k-j}) / den_0
            let mut acc = self.num.coeff(k);
            for j in 1..=min(deg_d, k) {
                let dj = &self.den.coeffs()[j];
                if !dj.is_zero() {
                    acc -= dj * &out[k - j];
                }
            }
            out.push(acc * &d0_inv);
        }
        Ok(Series::from_coeffs(out))
    }
}
