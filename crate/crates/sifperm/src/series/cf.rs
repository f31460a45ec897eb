//! Truncated evaluation of level-indexed continued fractions of the shape
//!
//! ```text
//!   G_p = 1 / (1 + d_p(x) - x * G_{p+1})
//! ```
//!
//! evaluated bottom-up from the deepest level with the zero series in the
//! recursion slot. Each level contributes a factor `x`, so evaluating
//! `depth >= order + 1` levels pins every coefficient up to `order`; this is
//! asserted by re-evaluating two levels deeper rather than proved.

use super::{SeriesError, TruncatedSeries};

/// A level-indexed continued fraction. `level_term(p, order)` returns the
/// non-recursive part `d_p(x)` of level `p` at the requested truncation
/// order; `first_level` is the outermost level; `depth` the number of levels
/// to evaluate.
pub struct CfSpec<'a> {
    pub level_term: &'a dyn Fn(usize, usize) -> TruncatedSeries,
    pub first_level: usize,
    pub depth: usize,
}

impl<'a> CfSpec<'a> {
    fn evaluate(&self, depth: usize, order: usize) -> Result<TruncatedSeries, SeriesError> {
        let one = TruncatedSeries::one(order);
        let x = TruncatedSeries::x(order);
        let mut g = TruncatedSeries::zero(order);
        for p in (self.first_level..self.first_level + depth).rev() {
            let d_p = (self.level_term)(p, order);
            g = one.add(&d_p)?.sub(&x.mul(&g)?)?.recip()?;
        }
        Ok(g)
    }
}

/// Evaluates the continued fraction to the given order, checking that the
/// result is stable when the depth grows by two.
pub fn continued_fraction(spec: &CfSpec, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if spec.depth < order + 1 {
        return Err(SeriesError::DepthTooShallow {
            depth: spec.depth,
            order,
        });
    }
    let shallow = spec.evaluate(spec.depth, order)?;
    let deep = spec.evaluate(spec.depth + 2, order)?;
    for k in 0..=order {
        if shallow.coeff(k) != deep.coeff(k) {
            return Err(SeriesError::Unstable { index: k });
        }
    }
    Ok(shallow)
}
