//! Separator sampling and the integer feasibility system over the unknown
//! coefficients `a_0 .. a_{d-1}` of `q(x) = x^d + sum a_i x^i`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::polycore::IntPoly;
use crate::scalar::ExactField;
use crate::Rational;

/// Default grid resolution: separators are multiples of `2^-16`.
pub const DEFAULT_GRID_LOG2: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("threshold {0} must exceed 1")]
    TooSmall(Rational),
    #[error("threshold {0} is not below the plastic constant")]
    AbovePlastic(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("separator {0} lies outside (-2, 2)")]
    OutOfRange(Rational),
    #[error("separators must be strictly increasing")]
    NotIncreasing,
    #[error("degree {d} needs {expected} interior separators, got {got}")]
    WrongCount { d: usize, expected: usize, got: usize },
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
}

/// Upper threshold `eta` for the Salem number together with `R = eta + 1/eta`,
/// the matching bound on the large root of the half-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    eta: Rational,
    r: Rational,
}

impl Threshold {
    /// Accepts `1 < eta < plastic constant`, decided exactly by the sign of
    /// `eta^3 - eta - 1`.
    pub fn new(eta: Rational) -> Result<Self, ThresholdError> {
        if eta <= Rational::one() {
            return Err(ThresholdError::TooSmall(eta));
        }
        let cubic = IntPoly::from_i64_desc(&[1, 0, -1, -1]);
        if !cubic.eval(&eta).is_negative() {
            return Err(ThresholdError::AbovePlastic(eta));
        }
        let r = &eta + eta.recip();
        Ok(Threshold { eta, r })
    }

    /// The default threshold `49/37`.
    pub fn default_eta() -> Self {
        Self::new(Rational::new(49.into(), 37.into())).expect("49/37 is a valid threshold")
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }

    /// `eta + 1/eta`.
    pub fn r(&self) -> &Rational {
        &self.r
    }
}

/// Interior separators `beta_1 < ... < beta_{d-2}` in `(-2, 2)`.
///
/// The full separator tuple is `(-2, beta_1, ..., beta_{d-2}, 2, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTuple {
    d: usize,
    betas: Vec<Rational>,
}

impl SeparatorTuple {
    pub fn new(d: usize, betas: Vec<Rational>) -> Result<Self, SeparatorError> {
        if d < 2 {
            return Err(SeparatorError::DegreeTooSmall(d));
        }
        if betas.len() != d - 2 {
            return Err(SeparatorError::WrongCount { d, expected: d - 2, got: betas.len() });
        }
        let two = Rational::from_integer(2.into());
        for b in &betas {
            if b.abs() >= two {
                return Err(SeparatorError::OutOfRange(b.clone()));
            }
        }
        if betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SeparatorError::NotIncreasing);
        }
        Ok(SeparatorTuple { d, betas })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn betas(&self) -> &[Rational] {
        &self.betas
    }

    /// The `d + 1` separator points `-2, betas.., 2, R`.
    pub fn points(&self, thr: &Threshold) -> Vec<Rational> {
        let two = Rational::from_integer(2.into());
        let mut pts = Vec::with_capacity(self.d + 1);
        pts.push(-two.clone());
        pts.extend(self.betas.iter().cloned());
        pts.push(two);
        pts.push(thr.r().clone());
        pts
    }

    /// `true` if every beta has a denominator dividing `2^grid_log2`.
    pub fn on_grid(&self, grid_log2: u32) -> bool {
        let grid = BigInt::one() << grid_log2;
        self.betas.iter().all(|b| (&grid % b.denom()).is_zero())
    }
}

/// Draws `d - 2` distinct grid points `k / 2^grid_log2` uniformly from `(-2, 2)`.
pub fn sample_separators<R: Rng + ?Sized>(d: usize, grid_log2: u32, rng: &mut R) -> SeparatorTuple {
    assert!(d >= 2, "separator tuples need d >= 2");
    assert!(grid_log2 <= 60, "grid too fine");
    let span = 2i64 << grid_log2;
    let mut picked = BTreeSet::new();
    while picked.len() < d - 2 {
        picked.insert(rng.random_range(-span + 1..span));
    }
    let denom = BigInt::one() << grid_log2;
    let betas = picked
        .into_iter()
        .map(|k| Rational::new(BigInt::from(k), denom.clone()))
        .collect();
    SeparatorTuple { d, betas }
}

/// One integer inequality `sum coeffs[i] * a_i >= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl Row {
    pub fn holds(&self, a: &[BigInt]) -> bool {
        let lhs: BigInt = self.coeffs.iter().zip(a).map(|(c, x)| c * x).sum();
        lhs >= self.bound
    }

    /// Same check over the rationals.
    pub fn holds_rational(&self, a: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(a)
            .map(|(c, x)| x * Rational::from_int(c))
            .sum();
        lhs >= Rational::from_int(&self.bound)
    }
}

/// Rows `A a >= b` plus symmetric boxes `|a_i| <= boxes[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub rows: Vec<Row>,
    /// Inclusive bounds `(lo, hi)` per variable.
    pub boxes: Vec<(BigInt, BigInt)>,
}

impl ConstraintSystem {
    pub fn num_vars(&self) -> usize {
        self.boxes.len()
    }

    pub fn satisfied_by(&self, a: &[BigInt]) -> bool {
        a.len() == self.num_vars()
            && a.iter().zip(&self.boxes).all(|(x, (lo, hi))| lo <= x && x <= hi)
            && self.rows.iter().all(|r| r.holds(a))
    }

    /// Builds a system from machine integers; convenient in tests.
    pub fn from_i64(rows: &[(&[i64], i64)], boxes: &[(i64, i64)]) -> Self {
        let to_big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        ConstraintSystem {
            rows: rows
                .iter()
                .map(|(c, b)| Row { coeffs: to_big(c), bound: BigInt::from(*b) })
                .collect(),
            boxes: boxes.iter().map(|&(l, h)| (BigInt::from(l), BigInt::from(h))).collect(),
        }
    }
}

impl fmt::Debug for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ConstraintSystem {{")?;
        for row in &self.rows {
            let terms: Vec<String> = row.coeffs.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}] . a >= {}", terms.join(", "), row.bound)?;
        }
        for (i, (lo, hi)) in self.boxes.iter().enumerate() {
            writeln!(f, "  {lo} <= a_{i} <= {hi}")?;
        }
        write!(f, "}}")
    }
}

/// Vieta bound `ceil(binom(d, d - i) * R^(d - i))` on `|a_i|`.
pub fn vieta_box(d: usize, i: usize, r: &Rational) -> BigInt {
    let k = d - i;
    let b = Rational::from_integer(binomial(BigInt::from(d), BigInt::from(k)));
    let v = b * num_traits::pow(r.clone(), k);
    v.ceil_int()
}

/// Scaled sign-alternation rows: row `j` encodes `(-1)^(d-j) q(s_j) >= 1/den(s_j)^d`,
/// i.e. `(-1)^(d-j) q(s_j) > 0` once cleared to integers.
pub fn build_system(sep: &SeparatorTuple, thr: &Threshold) -> ConstraintSystem {
    let d = sep.degree();
    let rows = sep
        .points(thr)
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let positive = (d - j).is_multiple_of(2);
            let (n, m) = (s.numer(), s.denom());
            // coefficient of a_i is sigma * n^i * m^(d-i)
            let mut npow = vec![BigInt::one(); d + 1];
            let mut mpow = vec![BigInt::one(); d + 1];
            for k in 1..=d {
                npow[k] = &npow[k - 1] * n;
                mpow[k] = &mpow[k - 1] * m;
            }
            let mut coeffs: Vec<BigInt> = (0..d).map(|i| &npow[i] * &mpow[d - i]).collect();
            let mut lead = npow[d].clone();
            if !positive {
                coeffs.iter_mut().for_each(|c| *c = -&*c);
                lead = -lead;
            }
            Row { coeffs, bound: BigInt::one() - lead }
        })
        .collect();
    let boxes = (0..d)
        .map(|i| {
            let b = vieta_box(d, i, thr.r());
            (-b.clone(), b)
        })
        .collect();
    ConstraintSystem { rows, boxes }
}

/// The half-polynomial `x^d + sum a_i x^i` for a solver assignment.
pub fn q_from_assignment(a: &[BigInt]) -> IntPoly {
    let mut coeffs = a.to_vec();
    coeffs.push(BigInt::one());
    IntPoly::new(coeffs)
}
