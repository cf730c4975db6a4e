//! Dense polynomials over a small prime field `F_p` (`p < 2^31`).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::polycore::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            out = out * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    out
}

impl PolyModP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyModP { p, c }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|v| v.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect();
        Self::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        Self::new(self.p, self.c.iter().map(|v| v * inv % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| (get(&self.c, i) + get(&o.c, i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n).map(|i| (get(&self.c, i) + self.p - get(&o.c, i)) % self.p).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|v| v * (k % self.p) % self.p).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        if self.c.len() < d.c.len() {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p;
        let inv = inv_mod(d.leading(), p);
        let dd = d.degree();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = r[k] * inv % p;
            if coef == 0 {
                continue;
            }
            q[k - dd] = coef;
            for (i, &dc) in d.c.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = (r[idx] + p - coef * dc % p) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * (i as u64 % self.p) % self.p)
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut out = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            out = out.mul(&out).rem(m);
            if e.bit(i) {
                out = out.mul(&base).rem(m);
            }
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, i)` where `g` is the product of all degree-`i` irreducible factors.
    pub fn distinct_degree(&self) -> Vec<(PolyModP, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.make_monic();
        let x = Self::x(p);
        let pe = BigUint::from(p);
        let mut h = x.rem(&f);
        let mut i = 0;
        while f.degree() >= 2 * (i + 1) {
            i += 1;
            h = h.pow_mod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, i));
            }
        }
        if f.degree() > 0 {
            let deg = f.degree();
            out.push((f, deg));
        }
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        for (g, i) in self.distinct_degree() {
            degs.extend(std::iter::repeat_n(i, g.degree() / i));
        }
        degs
    }

    /// Splits a monic product of degree-`i` irreducibles (odd `p`) into its factors.
    pub fn equal_degree<R: Rng>(&self, i: usize, rng: &mut R) -> Vec<PolyModP> {
        assert!(self.p % 2 == 1, "equal-degree splitting needs an odd prime");
        let n = self.degree();
        if n == i {
            return vec![self.make_monic()];
        }
        let p = self.p;
        let exp = (num_traits::pow(BigUint::from(p), i) - 1u32) / 2u32;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.random_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let g = self.gcd(&a);
            let split = if g.degree() > 0 {
                g
            } else {
                let b = a.pow_mod(&exp, self).sub(&Self::one(p));
                self.gcd(&b)
            };
            if split.degree() > 0 && split.degree() < n {
                let rest = self.div_rem(&split).0.make_monic();
                let mut out = split.equal_degree(i, rng);
                out.extend(rest.equal_degree(i, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<PolyModP> {
        let mut out = Vec::new();
        for (g, i) in self.distinct_degree() {
            out.extend(g.equal_degree(i, rng));
        }
        out
    }

    /// Lift to integers with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }
}
