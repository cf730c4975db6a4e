//! Hensel lifting of a modular factorization of a monic integer polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::modp::PolyModP;
use crate::polycore::IntPoly;

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f = g * h (mod p)`, both monic, to `f = G * H (mod p^k)`, with `G`, `H`
/// monic and coefficients in `[0, p^k)`.
fn lift_pair(f: &IntPoly, g: &PolyModP, h: &PolyModP, k: u32) -> (IntPoly, IntPoly) {
    let p = g.modulus();
    let pb = BigInt::from(p);
    let (one, s, t) = PolyModP::ext_gcd(g, h);
    assert_eq!(one.degree(), 0, "modular factors must be coprime");
    let mut gl = g.to_int_poly();
    let mut hl = h.to_int_poly();
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = f - &(&gl * &hl);
        let e_int = IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        debug_assert_eq!(&e_int.scale(&pj), &diff, "residual not divisible by p^j");
        let e = PolyModP::from_int_poly(&e_int, p);
        // dg = t e mod g, dh = s e + (t e div g) h
        let (quot, dg) = t.mul(&e).div_rem(g);
        let dh = s.mul(&e).add(&quot.mul(h));
        gl = &gl + &dg.to_int_poly().scale(&pj);
        hl = &hl + &dh.to_int_poly().scale(&pj);
        pj *= &pb;
    }
    (reduce(&gl, &pj), reduce(&hl, &pj))
}

/// Lifts monic modular factors of the monic `f` to modulus `p^k`.
///
/// Factors are lifted along a balanced binary tree of two-factor lifts.
pub fn multifactor_lift(f: &IntPoly, factors: &[PolyModP], k: u32) -> Vec<IntPoly> {
    debug_assert!(f.is_monic());
    let p = factors[0].modulus();
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        return vec![reduce(f, &pk)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[PolyModP]| fs.iter().fold(PolyModP::one(p), |acc, g| acc.mul(g));
    let g = prod(&factors[..mid]);
    let h = prod(&factors[mid..]);
    let (gl, hl) = lift_pair(f, &g, &h, k);
    let mut out = multifactor_lift(&gl, &factors[..mid], k);
    out.extend(multifactor_lift(&hl, &factors[mid..], k));
    out
}

/// Smallest `k` with `p^k > bound`.
pub fn lift_exponent(p: u64, bound: &BigInt) -> u32 {
    let pb = BigInt::from(p);
    let mut acc = BigInt::one();
    let mut k = 0;
    while &acc <= bound {
        acc *= &pb;
        k += 1;
    }
    k.max(1)
}

/// Symmetric representative of `f mod m`, coefficients in `(-m/2, m/2]`.
pub fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Coefficient bound for any factor of `f` (Mignotte, via `2^n * ||f||_2`).
pub fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    (norm << f.degree()) + 1
}
