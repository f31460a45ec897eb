//! Integer polynomials in the two statistic markers `t` and `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// A polynomial in `t` and `s` with integer coefficients, stored sparsely as
/// `(t-degree, s-degree) -> coefficient`. Zero coefficients are never kept.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MarkerPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl MarkerPoly {
    pub fn zero() -> Self {
        MarkerPoly::default()
    }

    pub fn one() -> Self {
        MarkerPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = MarkerPoly::default();
        if c != 0 {
            p.terms.insert((0, 0), BigInt::from(c));
        }
        p
    }

    /// The monomial `c * t^a * s^b`.
    pub fn term(c: i64, t_deg: usize, s_deg: usize) -> Self {
        let mut p = MarkerPoly::default();
        if c != 0 {
            p.terms.insert((t_deg, s_deg), BigInt::from(c));
        }
        p
    }

    pub fn marker_t() -> Self {
        Self::term(1, 1, 0)
    }

    pub fn marker_s() -> Self {
        Self::term(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn coeff(&self, t_deg: usize, s_deg: usize) -> BigInt {
        self.terms.get(&(t_deg, s_deg)).cloned().unwrap_or_default()
    }

    /// Iterate `((t_deg, s_deg), coefficient)` in degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn max_t_degree(&self) -> usize {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn max_s_degree(&self) -> usize {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, v) in &other.terms {
            let entry = terms.entry(k).or_insert_with(BigInt::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(&k);
            }
        }
        MarkerPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MarkerPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                let key = (a1 + a2, b1 + b2);
                let entry = terms.entry(key).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MarkerPoly { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MarkerPoly::zero();
        }
        MarkerPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Exact evaluation at rational marker values.
    pub fn eval(&self, t: &Rational, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for _ in 0..a {
                term *= t;
            }
            for _ in 0..b {
                term *= s;
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for MarkerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if a > 0 {
                write!(f, "*t^{a}")?;
            }
            if b > 0 {
                write!(f, "*s^{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MarkerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkerPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_and_eval() {
        // (t - 1)(s + 2) = ts + 2t - s - 2
        let p = MarkerPoly::marker_t().sub(&MarkerPoly::one());
        let q = MarkerPoly::marker_s().add(&MarkerPoly::constant(2));
        let prod = p.mul(&q);
        assert_eq!(prod.coeff(1, 1), BigInt::from(1));
        assert_eq!(prod.coeff(1, 0), BigInt::from(2));
        assert_eq!(prod.coeff(0, 1), BigInt::from(-1));
        assert_eq!(prod.coeff(0, 0), BigInt::from(-2));

        let t = rat(1, 2);
        let s = rat(3, 1);
        let lhs = prod.eval(&t, &s);
        let rhs = p.eval(&t, &s) * q.eval(&t, &s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = MarkerPoly::marker_t().add(&MarkerPoly::marker_s());
        let q = p.sub(&MarkerPoly::marker_t());
        assert_eq!(q, MarkerPoly::marker_s());
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn display_reads_naturally() {
        let p = MarkerPoly::term(2, 2, 1).add(&MarkerPoly::constant(-1));
        assert_eq!(p.to_string(), "-1 + 2*t^2*s^1");
    }
}
