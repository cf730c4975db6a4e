//! Trace transform between reciprocal polynomials of degree `2d` and monic
//! polynomials of degree `d`: `P(x) = x^d Q(x + 1/x)`.
//!
//! A root `tau` of `P` maps to the root `tau + 1/tau` of `Q`. Unimodular pairs
//! land in `(-2, 2)` and a real pair `tau, 1/tau` lands above 2.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polycore::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("polynomial degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
}

/// Chebyshev-type basis for the interval `(-2, 2)`.
///
/// Stored as `V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1}`, which satisfies
/// `V_k(x + 1/x) = x^k + x^{-k}`. The one-based basis `C_k` is exposed on top:
/// `C_1 = 1` and `C_{k+1} = V_k`.
#[derive(Debug, Clone)]
pub struct ChebBasis {
    v: Vec<IntPoly>,
}

impl ChebBasis {
    /// Basis holding `C_1 ..= C_{n}`.
    pub fn new(n: usize) -> Self {
        let mut v = vec![IntPoly::constant(BigInt::from(2)), IntPoly::x()];
        let x = IntPoly::x();
        while v.len() < n.max(2) {
            let k = v.len();
            let next = &(&x * &v[k - 1]) - &v[k - 2];
            v.push(next);
        }
        ChebBasis { v }
    }

    /// `C_k` for `1 <= k <= n`.
    pub fn c(&self, k: usize) -> IntPoly {
        assert!(k >= 1 && k <= self.v.len(), "basis index {k} out of range");
        if k == 1 {
            IntPoly::one()
        } else {
            self.v[k - 1].clone()
        }
    }
}

pub fn is_reciprocal(p: &IntPoly) -> bool {
    let c = p.coeffs();
    c.iter().eq(c.iter().rev())
}

/// Half-degree polynomial `Q` of a monic reciprocal `P` of even degree.
pub fn p_to_q(p: &IntPoly) -> Result<IntPoly, TransformError> {
    let n = p.degree();
    if n % 2 == 1 {
        return Err(TransformError::OddDegree(n));
    }
    if n < 2 {
        return Err(TransformError::DegreeTooSmall { min: 2, got: n });
    }
    if !p.is_monic() {
        return Err(TransformError::NotMonic);
    }
    if !is_reciprocal(p) {
        return Err(TransformError::NotReciprocal);
    }
    let d = n / 2;
    let basis = ChebBasis::new(d + 1);
    let mut q = IntPoly::zero();
    for k in 0..=d {
        let c = p.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        q = &q + &basis.c(d + 1 - k).scale(&c);
    }
    Ok(q)
}

/// Reciprocal polynomial `x^d q(x + 1/x)` of a monic `q` of degree `d`.
pub fn q_to_p(q: &IntPoly) -> Result<IntPoly, TransformError> {
    let d = q.degree();
    if d < 1 {
        return Err(TransformError::DegreeTooSmall { min: 1, got: d });
    }
    if !q.is_monic() {
        return Err(TransformError::NotMonic);
    }
    // sum_k b_k x^(d-k) (x^2 + 1)^k
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut power = IntPoly::one();
    let mut out = IntPoly::zero();
    for (k, b) in q.coeffs().iter().enumerate() {
        if !b.is_zero() {
            out = &out + &power.shift(d - k).scale(b);
        }
        if k < d {
            power = &power * &x2p1;
        }
    }
    debug_assert!(out.leading().is_some_and(One::is_one));
    Ok(out)
}

/// Rebuilds a palindromic `P` from its leading half `1, c_1, ..., c_d`.
pub fn p_from_half(half: &[BigInt]) -> IntPoly {
    let d = half.len().saturating_sub(1);
    let mut coeffs = vec![BigInt::zero(); 2 * d + 1];
    for (k, c) in half.iter().enumerate() {
        coeffs[2 * d - k] = c.clone();
        coeffs[k] = c.clone();
    }
    IntPoly::new(coeffs)
}

/// Leading half `1, c_1, ..., c_d` of a reciprocal polynomial of degree `2d`.
pub fn half_of(p: &IntPoly) -> Vec<BigInt> {
    let n = p.degree();
    (0..=n / 2).map(|k| p.coeff(n - k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPoly {
        IntPoly::from_i64_desc(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    fn lehmer_q() -> IntPoly {
        IntPoly::from_i64_desc(&[1, 1, -5, -5, 4, 3])
    }

    #[test]
    fn listed_basis_values() {
        let b = ChebBasis::new(6);
        assert_eq!(b.c(1), IntPoly::one());
        assert_eq!(b.c(2), IntPoly::x());
        assert_eq!(b.c(3), IntPoly::from_i64_desc(&[1, 0, -2]));
        assert_eq!(b.c(4), IntPoly::from_i64_desc(&[1, 0, -3, 0]));
        assert_eq!(b.c(5), IntPoly::from_i64_desc(&[1, 0, -4, 0, 2]));
        assert_eq!(b.c(6), IntPoly::from_i64_desc(&[1, 0, -5, 0, 5, 0]));
    }

    #[test]
    fn basis_identity_up_to_32() {
        // x^k C_{k+1}(x + 1/x) = x^{2k} + 1, via the monic q_to_p expansion of C_{k+1}
        let b = ChebBasis::new(33);
        for k in 1..=32 {
            let p = q_to_p(&b.c(k + 1)).unwrap();
            let mut expect = vec![0i64; 2 * k + 1];
            expect[0] = 1;
            expect[2 * k] = 1;
            assert_eq!(p, IntPoly::from_i64(&expect), "k = {k}");
        }
    }

    #[test]
    fn lehmer_half_polynomial() {
        assert_eq!(p_to_q(&lehmer()).unwrap(), lehmer_q());
        assert_eq!(q_to_p(&lehmer_q()).unwrap(), lehmer());
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            p_to_q(&IntPoly::from_i64_desc(&[1, 1, 1])).unwrap(),
            IntPoly::from_i64_desc(&[1, 1])
        );
        assert_eq!(
            p_to_q(&IntPoly::from_i64_desc(&[1, -1, -1, -1, 1])).unwrap(),
            IntPoly::from_i64_desc(&[1, -1, -3])
        );
        assert_eq!(
            q_to_p(&IntPoly::from_i64_desc(&[1, -3])).unwrap(),
            IntPoly::from_i64_desc(&[1, -3, 1])
        );
        assert_eq!(
            q_to_p(&IntPoly::from_i64_desc(&[1, -1, -3])).unwrap(),
            IntPoly::from_i64_desc(&[1, -1, -1, -1, 1])
        );
    }

    #[test]
    fn reciprocity() {
        assert!(is_reciprocal(&IntPoly::from_i64_desc(&[1, 1, 1])));
        assert!(!is_reciprocal(&IntPoly::from_i64_desc(&[1, 1, 0])));
        assert!(is_reciprocal(&lehmer()));
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            p_to_q(&IntPoly::from_i64_desc(&[1, 2, 2, 1])),
            Err(TransformError::OddDegree(3))
        );
        assert_eq!(p_to_q(&IntPoly::from_i64_desc(&[2, 1, 2])), Err(TransformError::NotMonic));
        assert_eq!(
            p_to_q(&IntPoly::from_i64_desc(&[1, 2, 3])),
            Err(TransformError::NotReciprocal)
        );
        assert_eq!(q_to_p(&IntPoly::from_i64_desc(&[2, 1])), Err(TransformError::NotMonic));
    }

    #[test]
    fn half_roundtrip() {
        let half: Vec<BigInt> = [1, 1, 0, -1, -1, -1].iter().map(|&c| c.into()).collect();
        let p = p_from_half(&half);
        assert_eq!(p, lehmer());
        assert_eq!(half_of(&p), half);
    }
}
