//! Exact ordered-field scalars used by the LP machinery.
//!
//! Every accept/reject decision in this crate goes through exact arithmetic.
//! The simplex and branch-and-bound code is written against [`ExactField`]
//! so that it can run over arbitrary-precision rationals in production and
//! over fixed-width rationals in small tests.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An ordered field with exact arithmetic and an integer lattice.
pub trait ExactField: Clone + Debug + Ord + Num + Signed {
    fn from_int(v: &BigInt) -> Self;

    /// Largest integer not exceeding `self`.
    fn floor_int(&self) -> BigInt;

    fn is_integral(&self) -> bool;

    fn ceil_int(&self) -> BigInt {
        if self.is_integral() {
            self.floor_int()
        } else {
            self.floor_int() + 1
        }
    }

    /// Distance to the nearest integer, as a field element.
    fn frac_distance(&self) -> Self {
        let f = self.clone() - Self::from_int(&self.floor_int());
        let g = Self::one() - f.clone();
        if f < g {
            f
        } else {
            g
        }
    }
}

impl ExactField for Ratio<BigInt> {
    fn from_int(v: &BigInt) -> Self {
        Ratio::from_integer(v.clone())
    }

    fn floor_int(&self) -> BigInt {
        self.floor().to_integer()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! impl_exact_field_fixed {
    ($($t:ty),*) => {$(
        impl ExactField for Ratio<$t> {
            fn from_int(v: &BigInt) -> Self {
                Ratio::from_integer(v.to_string().parse::<$t>().expect("integer out of range"))
            }

            fn floor_int(&self) -> BigInt {
                BigInt::from(self.floor().to_integer())
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }
        }
    )*};
}

impl_exact_field_fixed!(i64, i128);

/// Exact rational `n/d` from machine integers; panics on `d == 0`.
pub fn ratio<T: ExactField>(n: i64, d: i64) -> T {
    T::from_int(&BigInt::from(n)) / T::from_int(&BigInt::from(d))
}

/// Nearest `f64` to an exact big rational.
pub fn to_f64(r: &Ratio<BigInt>) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a shifted quotient when numerator/denominator overflow f64
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900) as usize;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn from_f64(v: f64) -> Option<Ratio<BigInt>> {
    Ratio::<BigInt>::from_f64(v)
}
