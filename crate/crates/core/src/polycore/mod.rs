//! Exact integer polynomials and real-root machinery.
//!
//! Root counting uses Sturm chains of integer pseudo-remainders; refinement is
//! bisection over exact rationals. No floating point enters any decision here.

mod intpoly;
mod sturm;

pub use intpoly::IntPoly;
pub use sturm::{count_real_roots, count_roots, refine_root, sturm_chain, SturmChain};

use std::fmt;

use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(Rational),
    #[error("polynomial has the same sign at both endpoints of {0}")]
    NoSignChange(Box<Interval>),
    #[error("interval is empty: lo = {lo}, hi = {hi}")]
    EmptyInterval { lo: Box<Rational>, hi: Box<Rational> },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// Open interval `(lo, hi)` with exact rational endpoints, `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, PolyError> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(PolyError::EmptyInterval { lo: Box::new(lo), hi: Box::new(hi) })
        }
    }

    /// Convenience constructor from machine-integer fractions.
    pub fn from_ratios(lo: (i64, i64), hi: (i64, i64)) -> Result<Self, PolyError> {
        Self::new(
            Rational::new(lo.0.into(), lo.1.into()),
            Rational::new(hi.0.into(), hi.1.into()),
        )
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// `true` if `x` lies strictly between the endpoints.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// `true` if `other` is a (not necessarily strict) subinterval of `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
