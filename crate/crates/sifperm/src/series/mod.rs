//! Exact truncated formal power series.
//!
//! Coefficients are arbitrary-precision rationals; nothing is ever rounded.
//! Arithmetic keeps the truncation order fixed and refuses to mix orders, so
//! a coefficient below the order is always exact. Counting coefficients are
//! extracted through [`TruncatedSeries::counting_coefficient`], which checks
//! integrality instead of assuming it.

mod cf;
mod marker;
mod refined;

pub use cf::{continued_fraction, CfSpec};
pub use marker::MarkerPoly;
pub use refined::RefinedSeries;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("cannot invert a series whose constant term is {0}")]
    NonInvertibleConstant(String),
    #[error("coefficient of x^{index} is {value}, expected an integer")]
    NonIntegerCoefficient { index: usize, value: String },
    #[error("continued-fraction depth {depth} is too shallow for order {order}")]
    DepthTooShallow { depth: usize, order: usize },
    #[error("continued-fraction coefficients changed between depths at x^{index}")]
    Unstable { index: usize },
    #[error("expected {expected} constant term, found {found}")]
    ConstantTerm {
        expected: &'static str,
        found: String,
    },
    #[error("power substitution requires exponent >= 1")]
    ZeroPower,
}

/// A formal power series truncated at a fixed order `N`, storing the exact
/// rational coefficients `c_0, ..., c_N`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * x^k`, truncated (the zero series if `k > order`).
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Polynomial with integer coefficients `p[0] + p[1] x + ...`, truncated.
    pub fn from_int_poly(poly: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, &c) in poly.iter().enumerate().take(order + 1) {
            s.coeffs[k] = Rational::from_integer(BigInt::from(c));
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::NonInvertibleConstant(c0.to_string()));
        }
        let order = self.order();
        let inv0 = c0.recip();
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !coeffs[n - k].is_zero() {
                    acc += &self.coeffs[k] * &coeffs[n - k];
                }
            }
            coeffs[n] = -(acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul(&other.recip()?)
    }

    /// Substitution `x -> x^k` for `k >= 1`, truncated at the same order.
    pub fn substitute_power(&self, k: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroPower);
        }
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(j) if j <= order => coeffs[j] = a.clone(),
                _ => break,
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Coefficient of `x^n` as an integer count; fails if the exact value is
    /// not an integer.
    pub fn counting_coefficient(&self, n: usize) -> Result<BigInt, SeriesError> {
        let c = &self.coeffs[n];
        if c.is_integer() {
            Ok(c.to_integer())
        } else {
            Err(SeriesError::NonIntegerCoefficient {
                index: n,
                value: c.to_string(),
            })
        }
    }

    /// All coefficients as integers, or the first offending index.
    pub fn counting_coefficients(&self) -> Result<Vec<BigInt>, SeriesError> {
        (0..=self.order()).map(|n| self.counting_coefficient(n)).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    /// Exact-rational coefficient list `c0, c1, ..., cN`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{self}]")
    }
}

/// The Catalan series `C(x) = sum C_n x^n`, produced by the integer
/// recurrence rather than the closed-form radical.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let coeffs = crate::numbers::catalan_numbers(order + 1)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// `Q(x) = sum C_n^2 x^n`.
pub fn catalan_squared_series(order: usize) -> TruncatedSeries {
    let coeffs = crate::numbers::catalan_numbers(order + 1)
        .into_iter()
        .map(|c| Rational::from_integer(&c * &c))
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// Power-series expansion of `numerator / denominator` for integer
/// polynomials; the denominator needs a nonzero constant term.
pub fn expand_rational(
    numerator: &[i64],
    denominator: &[i64],
    order: usize,
) -> Result<TruncatedSeries, SeriesError> {
    let num = TruncatedSeries::from_int_poly(numerator, order);
    let den = TruncatedSeries::from_int_poly(denominator, order);
    num.div(&den)
}

/// Class series from building-block series:
/// `A = 1 + x + x^2 - 1/(1 + T)`, for `T` with zero constant term.
pub fn class_from_blocks(t: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !t.coeff(0).is_zero() {
        return Err(SeriesError::ConstantTerm {
            expected: "zero",
            found: t.coeff(0).to_string(),
        });
    }
    let order = t.order();
    let one = TruncatedSeries::one(order);
    let head = TruncatedSeries::from_int_poly(&[1, 1, 1], order);
    head.sub(&one.add(t)?.recip()?)
}

/// Building-block series from class series:
/// `1 + T = 1 / (1 - (A - x - x^2))`, for `A` with zero constant term.
pub fn blocks_from_class(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !a.coeff(0).is_zero() {
        return Err(SeriesError::ConstantTerm {
            expected: "zero",
            found: a.coeff(0).to_string(),
        });
    }
    let order = a.order();
    let one = TruncatedSeries::one(order);
    let trimmed = a.sub(&TruncatedSeries::from_int_poly(&[0, 1, 1], order))?;
    one.sub(&trimmed)?.recip()?.sub(&one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::catalan;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn product_of_binomials() {
        let order = 8;
        let a = TruncatedSeries::from_int_poly(&[1, 1], order);
        let b = TruncatedSeries::from_int_poly(&[1, -1], order);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::from_int_poly(&[1, 0, -1], order));
    }

    #[test]
    fn catalan_functional_equation() {
        // C = 1 + x C^2 to order 20
        let order = 20;
        let c = catalan_series(order);
        let rhs = TruncatedSeries::one(order)
            .add(&TruncatedSeries::x(order).mul(&c.mul(&c).unwrap()).unwrap())
            .unwrap();
        assert_eq!(c, rhs);
    }

    #[test]
    fn indecomposable_relation_132() {
        // with I = (1-x)(C-1):  I / (1 - x + I) = x C  to order 20
        let order = 20;
        let c = catalan_series(order);
        let one = TruncatedSeries::one(order);
        let x = TruncatedSeries::x(order);
        let i132 = one.sub(&x).unwrap().mul(&c.sub(&one).unwrap()).unwrap();
        let lhs = i132.div(&one.sub(&x).unwrap().add(&i132).unwrap()).unwrap();
        assert_eq!(lhs, x.mul(&c).unwrap());
    }

    #[test]
    fn expand_rational_examples() {
        let s = expand_rational(&[0, 1, 1, -1], &[1, 0, -3], 12).unwrap();
        let got: Vec<BigInt> = (1..=12).map(|n| s.counting_coefficient(n).unwrap()).collect();
        let want: Vec<BigInt> = [1i64, 1, 2, 3, 6, 9, 18, 27, 54, 81, 162, 243]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(got, want);

        // (x - 2x^3 + 3x^4) / ((1-x)(1-3x^2))
        let s = expand_rational(&[0, 1, 0, -2, 3], &[1, -1, -3, 3], 12).unwrap();
        let got: Vec<BigInt> = (1..=12).map(|n| s.counting_coefficient(n).unwrap()).collect();
        let want: Vec<BigInt> = [1i64, 1, 2, 5, 8, 17, 26, 53, 80, 161, 242, 485]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(got, want);

        let s = expand_rational(&[1], &[1, -1], 6).unwrap();
        assert!(s.coeffs().iter().all(|c| c == &rat(1)));

        assert!(expand_rational(&[1], &[0, 1], 6).is_err());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(6);
        assert!(matches!(a.add(&b), Err(SeriesError::OrderMismatch { .. })));
    }

    #[test]
    fn division_needs_unit_constant() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::x(5);
        assert!(matches!(
            a.div(&b),
            Err(SeriesError::NonInvertibleConstant(_))
        ));
    }

    #[test]
    fn substitute_power_examples() {
        let order = 10;
        // Q(x^2) has C_2^2 = 4 at x^4
        let q = catalan_squared_series(order);
        assert_eq!(q.coeff(3), &Rational::from_integer(catalan(3) * catalan(3)));
        let q2 = q.substitute_power(2).unwrap();
        assert_eq!(q2.coeff(4), &rat(4));
        assert_eq!(q2.coeff(5), &rat(0));

        let geom = expand_rational(&[0, 1], &[1, -1], order).unwrap();
        let even = geom.substitute_power(2).unwrap();
        for k in 0..=order {
            let want = if k >= 2 && k % 2 == 0 { 1 } else { 0 };
            assert_eq!(even.coeff(k), &rat(want));
        }

        assert!(geom.substitute_power(0).is_err());
    }

    #[test]
    fn block_relation_round_trip() {
        let order = 20;
        // A with a_1 = a_2 = 1 and arbitrary exact tail
        let mut coeffs = vec![Rational::zero(); order + 1];
        for n in 1..=order {
            coeffs[n] = rat((n * n + 1) as i64);
        }
        let a = TruncatedSeries::from_coeffs(coeffs);
        let t = blocks_from_class(&a).unwrap();
        assert_eq!(class_from_blocks(&t).unwrap(), a);

        // no blocks of size >= 3 means T = 0
        let a_small = TruncatedSeries::from_int_poly(&[0, 1, 1], order);
        let t = blocks_from_class(&a_small).unwrap();
        assert_eq!(t, TruncatedSeries::zero(order));

        let bad = TruncatedSeries::one(order);
        assert!(class_from_blocks(&bad).is_err());
    }

    #[test]
    fn counting_coefficient_checks_integrality() {
        let s = TruncatedSeries::from_coeffs(vec![rat(1), Rational::new(BigInt::from(1), BigInt::from(2))]);
        assert!(s.counting_coefficient(0).is_ok());
        assert!(matches!(
            s.counting_coefficient(1),
            Err(SeriesError::NonIntegerCoefficient { index: 1, .. })
        ));
    }

    #[test]
    fn display_is_exact_rational_list() {
        let s = TruncatedSeries::from_coeffs(vec![rat(1), Rational::new(BigInt::from(-3), BigInt::from(2))]);
        assert_eq!(s.to_string(), "1, -3/2");
    }
}
