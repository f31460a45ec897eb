//! Truncated series in `x` whose coefficients are integer polynomials in the
//! markers `t` and `s`.

use num_traits::Zero;

use super::marker::MarkerPoly;
use super::{Rational, SeriesError, TruncatedSeries};

/// A refinement of [`TruncatedSeries`]: the coefficient of `x^n` is a
/// polynomial in `t` and `s` rather than a number. Specializing the markers
/// to rationals commutes with all arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct RefinedSeries {
    coeffs: Vec<MarkerPoly>,
}

impl RefinedSeries {
    pub fn zero(order: usize) -> Self {
        RefinedSeries {
            coeffs: vec![MarkerPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(MarkerPoly::one(), 0, order)
    }

    /// `poly * x^k`, truncated.
    pub fn monomial(poly: MarkerPoly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = poly;
        }
        s
    }

    pub fn from_int_poly(poly: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, &c) in poly.iter().enumerate().take(order + 1) {
            s.coeffs[k] = MarkerPoly::constant(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MarkerPoly {
        &self.coeffs[k]
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
        Ok(RefinedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(RefinedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![MarkerPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(RefinedSeries { coeffs })
    }

    /// Multiplicative inverse for a series whose constant coefficient is the
    /// polynomial 1; this keeps every coefficient inside the integer
    /// polynomial ring.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonInvertibleConstant(
                self.coeffs[0].to_string(),
            ));
        }
        let order = self.order();
        let mut coeffs = vec![MarkerPoly::zero(); order + 1];
        coeffs[0] = MarkerPoly::one();
        for n in 1..=order {
            let mut acc = MarkerPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !coeffs[n - k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&coeffs[n - k]));
                }
            }
            coeffs[n] = acc.neg();
        }
        Ok(RefinedSeries { coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul(&other.recip()?)
    }

    /// Exact specialization of the markers to rational values.
    pub fn specialize(&self, t: &Rational, s: &Rational) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(|p| p.eval(t, s)).collect())
    }

    /// Substitutes whole series for the markers: `t -> t_series(x)`,
    /// `s -> s_series(x)`.
    pub fn substitute_markers(
        &self,
        t_series: &TruncatedSeries,
        s_series: &TruncatedSeries,
    ) -> Result<TruncatedSeries, SeriesError> {
        let order = self.order();
        if t_series.order() != order {
            return Err(SeriesError::OrderMismatch {
                left: order,
                right: t_series.order(),
            });
        }
        if s_series.order() != order {
            return Err(SeriesError::OrderMismatch {
                left: order,
                right: s_series.order(),
            });
        }
        let max_t = self.coeffs.iter().map(|p| p.max_t_degree()).max().unwrap_or(0);
        let max_s = self.coeffs.iter().map(|p| p.max_s_degree()).max().unwrap_or(0);
        let t_powers = powers(t_series, max_t)?;
        let s_powers = powers(s_series, max_s)?;
        let mut out = TruncatedSeries::zero(order);
        for (n, poly) in self.coeffs.iter().enumerate() {
            for (&(a, b), c) in poly.terms() {
                let factor = t_powers[a].mul(&s_powers[b])?;
                let scaled = factor.scale(&Rational::from_integer(c.clone()));
                // multiply by x^n by shifting
                let mut shifted = vec![Rational::zero(); order + 1];
                for (k, v) in scaled.coeffs().iter().enumerate().take(order + 1 - n) {
                    shifted[k + n] = v.clone();
                }
                out = out.add(&TruncatedSeries::from_coeffs(shifted))?;
            }
        }
        Ok(out)
    }
}

fn powers(base: &TruncatedSeries, max: usize) -> Result<Vec<TruncatedSeries>, SeriesError> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(TruncatedSeries::one(base.order()));
    for _ in 0..max {
        let next = out.last().expect("nonempty").mul(base)?;
        out.push(next);
    }
    Ok(out)
}

impl std::fmt::Debug for RefinedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RefinedSeries[")?;
        for (n, p) in self.coeffs.iter().enumerate() {
            writeln!(f, "  x^{n}: {p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn specialize_commutes_with_arithmetic() {
        let order = 8;
        let a = RefinedSeries::monomial(MarkerPoly::marker_t(), 1, order)
            .add(&RefinedSeries::one(order))
            .unwrap();
        let b = RefinedSeries::monomial(
            MarkerPoly::marker_s().sub(&MarkerPoly::constant(2)),
            2,
            order,
        )
        .add(&RefinedSeries::one(order))
        .unwrap();
        let t = rat(2, 3);
        let s = rat(-1, 2);
        let prod = a.mul(&b).unwrap();
        assert_eq!(
            prod.specialize(&t, &s),
            a.specialize(&t, &s).mul(&b.specialize(&t, &s)).unwrap()
        );
        let inv = b.recip().unwrap();
        assert_eq!(
            inv.specialize(&t, &s),
            b.specialize(&t, &s).recip().unwrap()
        );
    }

    #[test]
    fn recip_requires_unit_constant() {
        let order = 4;
        let bad = RefinedSeries::monomial(MarkerPoly::marker_t(), 0, order);
        assert!(bad.recip().is_err());
        let good = RefinedSeries::one(order)
            .sub(&RefinedSeries::monomial(MarkerPoly::marker_t(), 1, order))
            .unwrap();
        let inv = good.recip().unwrap();
        // 1/(1 - tx): coefficient of x^n is t^n
        for n in 0..=order {
            assert_eq!(inv.coeff(n).coeff(n, 0), BigInt::one());
        }
        assert!(good.mul(&inv).unwrap() == RefinedSeries::one(order));
    }

    #[test]
    fn substitute_markers_matches_specialize_on_constants() {
        let order = 6;
        let f = RefinedSeries::one(order)
            .sub(&RefinedSeries::monomial(MarkerPoly::marker_t(), 1, order))
            .unwrap()
            .recip()
            .unwrap();
        // t -> 3 (constant series) must agree with specialize at t = 3
        let three = TruncatedSeries::monomial(rat(3, 1), 0, order);
        let one = TruncatedSeries::one(order);
        assert_eq!(
            f.substitute_markers(&three, &one).unwrap(),
            f.specialize(&rat(3, 1), &rat(1, 1))
        );
        // t -> -x turns 1/(1 - tx) into 1/(1 + x^2)
        let neg_x = TruncatedSeries::x(order).neg();
        let got = f.substitute_markers(&neg_x, &one).unwrap();
        let want = super::super::expand_rational(&[1], &[1, 0, 1], order).unwrap();
        assert_eq!(got, want);
    }
}
