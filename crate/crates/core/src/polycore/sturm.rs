use std::cmp::Ordering;

use num_traits::Zero;

use super::{IntPoly, Interval, PolyError};
use crate::Rational;

/// Sturm chain held as integer polynomials.
///
/// Each remainder is the negated pseudo-remainder of its two predecessors,
/// divided by its (positive) content, so sign sequences match the classical
/// rational chain exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(IntPoly::sign_at_neg_infinity))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(IntPoly::sign_at_pos_infinity))
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn sturm_chain(p: &IntPoly) -> SturmChain {
    assert!(!p.is_zero(), "Sturm chain of zero polynomial");
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return SturmChain { chain };
    }
    let d = d.div_scalar_exact(&d.content());
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let next = -r.div_scalar_exact(&r.content());
        chain.push(next);
    }
    SturmChain { chain }
}

/// Number of distinct real roots of `p` in the open interval `iv`.
pub fn count_roots(p: &IntPoly, iv: &Interval) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for end in [iv.lo(), iv.hi()] {
        if p.sign_at(end) == Ordering::Equal {
            return Err(PolyError::EndpointRoot(end.clone()));
        }
    }
    let chain = sturm_chain(p);
    let lo = chain.variations_at(iv.lo());
    let hi = chain.variations_at(iv.hi());
    Ok(lo.saturating_sub(hi))
}

/// Number of distinct real roots of `p` on the whole line.
pub fn count_real_roots(p: &IntPoly) -> usize {
    let chain = sturm_chain(p);
    chain
        .variations_at_neg_infinity()
        .saturating_sub(chain.variations_at_pos_infinity())
}

/// Shrinks an isolating interval by exact bisection until it is narrower than `width`.
///
/// The returned interval is nested inside `iv` and `p` has opposite nonzero
/// signs at its endpoints.
pub fn refine_root(p: &IntPoly, iv: &Interval, width: &Rational) -> Result<Interval, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut lo = iv.lo().clone();
    let mut hi = iv.hi().clone();
    let s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == Ordering::Equal {
        return Err(PolyError::EndpointRoot(lo));
    }
    if s_hi == Ordering::Equal {
        return Err(PolyError::EndpointRoot(hi));
    }
    if s_lo == s_hi {
        return Err(PolyError::NoSignChange(Box::new(iv.clone())));
    }
    let two = Rational::from_integer(2.into());
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return Ok(bracket_exact_root(p, &mid, &lo, &hi, width, s_lo)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(Interval::new(lo, hi).expect("bisection keeps lo < hi"))
}

/// The bisection landed exactly on a rational root; build a bracket around it
/// that still shows the sign change.
fn bracket_exact_root(
    p: &IntPoly,
    root: &Rational,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
    s_lo: Ordering,
) -> Interval {
    let four = Rational::from_integer(4.into());
    let mut eps = width.clone() / &four;
    let gap = std::cmp::min(root - lo, hi - root);
    if eps >= gap {
        eps = gap / &four;
    }
    loop {
        let a = root - &eps;
        let b = root + &eps;
        let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
        if sa == s_lo && sb == s_lo.reverse() {
            return Interval::new(a, b).expect("eps > 0");
        }
        eps /= &four;
        debug_assert!(!eps.is_zero());
    }
}
