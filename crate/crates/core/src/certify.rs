//! Certification of Salem half-polynomials and correctly rounded values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::constraints::Threshold;
use crate::factorize::is_irreducible;
use crate::polycore::{count_roots, refine_root, IntPoly, Interval, PolyError};
use crate::transform::{half_of, is_reciprocal, q_to_p};
use crate::Rational;

/// Decimal places printed for Salem numbers.
pub const DECIMALS: u32 = 12;

/// Why a candidate half-polynomial is not a Salem half-polynomial below the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    NotMonic,
    DegreeTooSmall(usize),
    /// A root sits exactly on a separator boundary (`-2`, `2` or `R`).
    BoundaryRoot(Rational),
    /// Wrong number of roots in `(2, R)`.
    LargeRootCount(usize),
    /// Wrong number of roots in `(-2, 2)`.
    InnerRootCount { expected: usize, got: usize },
    ReducibleHalf,
    ReducibleFull,
}

impl Rejection {
    /// Short stable label for histograms.
    pub fn label(&self) -> &'static str {
        match self {
            Rejection::NotMonic => "not-monic",
            Rejection::DegreeTooSmall(_) => "degree-too-small",
            Rejection::BoundaryRoot(_) => "boundary-root",
            Rejection::LargeRootCount(_) => "large-root-count",
            Rejection::InnerRootCount { .. } => "inner-root-count",
            Rejection::ReducibleHalf => "half-reducible",
            Rejection::ReducibleFull => "full-reducible",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotMonic => write!(f, "half-polynomial is not monic"),
            Rejection::DegreeTooSmall(d) => write!(f, "half-polynomial has degree {d} < 2"),
            Rejection::BoundaryRoot(at) => write!(f, "half-polynomial vanishes at {at}"),
            Rejection::LargeRootCount(n) => {
                write!(f, "{n} roots in (2, eta + 1/eta), expected exactly 1")
            }
            Rejection::InnerRootCount { expected, got } => {
                write!(f, "{got} roots in (-2, 2), expected {expected}")
            }
            Rejection::ReducibleHalf => write!(f, "half-polynomial is reducible"),
            Rejection::ReducibleFull => write!(f, "reciprocal polynomial is reducible"),
        }
    }
}

/// A half-polynomial proven to come from a Salem number below the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalemCertificate {
    pub q1: IntPoly,
    pub p: IntPoly,
    /// Roots of `q1` in `(-2, 2)` and in `(2, R)`.
    pub root_counts: (usize, usize),
    /// Isolating bracket of the Salem number inside `(1, eta)`.
    pub tau_bracket: Interval,
    pub eta: Rational,
}

impl SalemCertificate {
    pub fn half_degree(&self) -> usize {
        self.q1.degree()
    }
}

fn tau_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(DECIMALS + 1))
}

fn counted(q: &IntPoly, iv: &Interval) -> Result<usize, Rejection> {
    count_roots(q, iv).map_err(|e| match e {
        PolyError::EndpointRoot(at) => Rejection::BoundaryRoot(at),
        other => unreachable!("root count on a valid interval failed: {other}"),
    })
}

/// Checks every Salem condition on `q1` and brackets the Salem number.
pub fn certify(q1: &IntPoly, thr: &Threshold) -> Result<SalemCertificate, Rejection> {
    if !q1.is_monic() {
        return Err(Rejection::NotMonic);
    }
    let d = q1.degree();
    if d < 2 {
        return Err(Rejection::DegreeTooSmall(d));
    }
    let two = Rational::from_integer(2.into());
    let upper = Interval::new(two.clone(), thr.r().clone()).expect("R > 2");
    let middle = Interval::new(-two.clone(), two).expect("-2 < 2");
    let large = counted(q1, &upper)?;
    if large != 1 {
        return Err(Rejection::LargeRootCount(large));
    }
    let inner = counted(q1, &middle)?;
    if inner != d - 1 {
        return Err(Rejection::InnerRootCount { expected: d - 1, got: inner });
    }
    if !is_irreducible(q1) {
        return Err(Rejection::ReducibleHalf);
    }
    let p = q_to_p(q1).expect("monic of degree >= 2");
    debug_assert!(is_reciprocal(&p));
    if !is_irreducible(&p) {
        return Err(Rejection::ReducibleFull);
    }
    let one_to_eta = Interval::new(Rational::one(), thr.eta().clone()).expect("eta > 1");
    let tau_bracket = refine_root(&p, &one_to_eta, &tau_width())
        .expect("tau + 1/tau is the unique root of q1 in (2, R), so P changes sign on (1, eta)");
    Ok(SalemCertificate {
        q1: q1.clone(),
        p,
        root_counts: (inner, large),
        tau_bracket,
        eta: thr.eta().clone(),
    })
}

/// Round-half-up of `x * 10^DECIMALS` to an integer.
fn scaled_round(x: &Rational) -> BigInt {
    let scale = Rational::from_integer(BigInt::from(10u64).pow(DECIMALS));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (x * scale + half).floor().to_integer()
}

fn format_scaled(n: &BigInt) -> String {
    let scale = BigInt::from(10u64).pow(DECIMALS);
    let (int, frac) = n.div_mod_floor(&scale);
    format!("{int}.{:0width$}", frac, width = DECIMALS as usize)
}

/// Salem number rounded to [`DECIMALS`] places.
///
/// Bisection continues until both bracket endpoints round to the same value,
/// so the printed digits are exact.
pub fn compute_tau(cert: &SalemCertificate) -> String {
    let mut bracket = cert.tau_bracket.clone();
    loop {
        let lo = scaled_round(bracket.lo());
        let hi = scaled_round(bracket.hi());
        if lo == hi {
            return format_scaled(&lo);
        }
        let narrower = bracket.width() / Rational::from_integer(BigInt::from(16));
        bracket = refine_root(&cert.p, &bracket, &narrower).expect("bracket keeps its sign change");
    }
}

/// Where a record was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub worker: usize,
    pub trial: u64,
}

/// A certified find, as persisted one per line in result files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalemRecord {
    pub two_d: usize,
    pub tau: String,
    pub half_coeffs: Vec<i64>,
    pub full_coeffs: Vec<i64>,
    pub q_coeffs: Vec<i64>,
    pub seed: u64,
    pub worker: usize,
    pub trial: u64,
}

impl SalemRecord {
    /// Coefficients are listed highest degree first, matching the printed tables.
    pub fn from_certificate(cert: &SalemCertificate, prov: Provenance) -> Self {
        let desc = |p: &IntPoly| -> Vec<i64> {
            p.coeffs()
                .iter()
                .rev()
                .map(|c| c.to_i64().expect("coefficient fits in i64"))
                .collect()
        };
        let half = half_of(&cert.p)
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect();
        SalemRecord {
            two_d: cert.p.degree(),
            tau: compute_tau(cert),
            half_coeffs: half,
            full_coeffs: desc(&cert.p),
            q_coeffs: desc(&cert.q1),
            seed: prov.seed,
            worker: prov.worker,
            trial: prov.trial,
        }
    }

    pub fn provenance(&self) -> Provenance {
        Provenance { seed: self.seed, worker: self.worker, trial: self.trial }
    }

    /// Half-polynomial rebuilt from `q_coeffs`.
    pub fn q_poly(&self) -> IntPoly {
        IntPoly::from_i64_desc(&self.q_coeffs)
    }

    /// `full_coeffs` is palindromic and starts with `half_coeffs`.
    pub fn is_consistent(&self) -> bool {
        let f = &self.full_coeffs;
        f.len() == self.two_d + 1
            && f.iter().eq(f.iter().rev())
            && f.starts_with(&self.half_coeffs)
            && self.half_coeffs.len() == self.two_d / 2 + 1
    }
}

/// `true` when two 12-decimal strings differ by at most one unit in the last place.
pub fn within_last_digit(a: &str, b: &str) -> bool {
    let parse = |s: &str| -> Option<BigInt> {
        let (int, frac) = s.split_once('.')?;
        if frac.len() != DECIMALS as usize {
            return None;
        }
        format!("{int}{frac}").parse().ok()
    };
    match (parse(a), parse(b)) {
        (Some(x), Some(y)) => (x - y).abs() <= BigInt::one(),
        _ => false,
    }
}

/// Rational `10^-k` helper shared with callers that need finer brackets.
pub fn decimal_unit(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(k))
}
