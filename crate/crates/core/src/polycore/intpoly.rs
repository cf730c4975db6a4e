use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are always
/// stripped, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds a polynomial from machine integers, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from machine integers, highest degree first.
    pub fn from_i64_desc(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Horner evaluation at an exact rational.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.eval_with(x, |c| Rational::from_integer(c.clone()))
    }

    /// Horner evaluation in any ring that integer coefficients map into.
    pub fn eval_with<T, F>(&self, x: &T, lift: F) -> T
    where
        T: Num + Clone,
        F: Fn(&BigInt) -> T,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.eval_with(&x, |c| c.to_f64().unwrap_or(f64::NAN))
    }

    /// Integer evaluation.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval_with(x, Clone::clone)
    }

    /// Sign of the polynomial at `x`, computed without leaving the integers:
    /// with `x = n/m`, `m > 0`, the sign of `m^deg * p(n/m)` is taken.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let (n, m) = (x.numer(), x.denom());
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return Ordering::Equal;
        };
        let mut acc = lead.clone();
        let mut mpow = BigInt::one();
        for c in iter {
            mpow *= m;
            acc = acc * n + c * &mpow;
        }
        acc.sign_ordering()
    }

    /// Sign of the polynomial as `x -> +inf`.
    pub fn sign_at_pos_infinity(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |c| c.sign_ordering())
    }

    /// Sign of the polynomial as `x -> -inf`.
    pub fn sign_at_neg_infinity(&self) -> Ordering {
        let s = self.sign_at_pos_infinity();
        if self.degree() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Coefficient list reversed (`x^deg * p(1/x)` when the constant term is nonzero).
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and normalizes the leading coefficient to be positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Division by a positive integer that is known to divide every coefficient.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Remainder of `|lc(b)|^(deg a - deg b + 1) * a` by `b`.
    ///
    /// The multiplier is positive, so the result has the same sign behavior
    /// as the true rational remainder. `b` must be nonzero.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        let db = b.degree();
        if self.is_zero() || self.degree() < db {
            return self.clone();
        }
        let lcb = b.leading().unwrap().abs();
        let neg = b.leading().unwrap().is_negative();
        let mut r = self.coeffs.clone();
        let mut steps = self.degree() - db + 1;
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            // r <- |lcb| * r - lr * sign(lcb) * x^(k-db) * b
            for c in r.iter_mut() {
                *c *= &lcb;
            }
            let factor = if neg { -lr } else { lr };
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k - db + i] -= &factor * bc;
            }
            debug_assert!(r[k].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        // pad the multiplier so it is exactly |lcb|^(deg a - deg b + 1)
        let mut out = IntPoly::new(r);
        if steps > 0 {
            out = out.scale(&num_traits::pow(lcb, steps));
        }
        out
    }

    /// Exact division over the integers; `None` if `d` does not divide `self` in Z[x].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let dd = d.degree();
        let lcd = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (qc, rem) = r[k].div_rem(lcd);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &qc * dc;
            }
            q[k - dd] = qc;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor in Z[x], primitive-PRS style, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        assert!(!self.is_zero(), "squarefree part of zero polynomial");
        if self.degree() == 0 {
            return IntPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g.primitive_part())
            .expect("gcd divides its argument")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    pub fn pow(&self, k: usize) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// A rational `M` with every real root strictly inside `(-M, M)` (Cauchy bound plus one).
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().expect("root bound of zero polynomial").abs();
        let top = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        Rational::new(top, lead) + Rational::from_integer(BigInt::from(2))
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}
