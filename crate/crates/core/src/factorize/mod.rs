//! Factorization over the integers.
//!
//! Squarefree inputs are factored by Zassenhaus' method: distinct-degree and
//! Cantor-Zassenhaus equal-degree splitting modulo a small odd prime, Hensel
//! lifting past a coefficient bound, then recombination of lifted factors by
//! trial division. Factor-degree patterns from several primes are intersected
//! first, which proves most irreducible inputs irreducible without lifting.

mod hensel;
mod modp;

pub use modp::PolyModP;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constraints::Threshold;
use crate::polycore::{count_roots, IntPoly, Interval, PolyError};
use crate::Rational;

use hensel::{factor_coefficient_bound, lift_exponent, multifactor_lift, symmetric_mod};

/// Small primes used for modular work.
const PRIMES: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Primes tried for the irreducible-mod-p certificate.
pub const FAST_PATH_PRIMES: usize = 20;

/// Good primes whose degree patterns are intersected before lifting.
const PATTERN_PRIMES: usize = 8;

/// Complete factorization `content * prod factor_i^mult_i`.
///
/// Factors are primitive with positive leading coefficient, sorted by degree
/// then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        let mut out = IntPoly::constant(self.content.clone());
        for (g, m) in &self.factors {
            out = &out * &g.pow(*m);
        }
        out
    }

    /// `true` for a single factor of multiplicity one with unit content.
    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a nonzero integer polynomial into irreducibles.
pub fn factor(p: &IntPoly) -> Factorization {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let mut content = p.content();
    if p.leading().is_some_and(Signed::is_negative) {
        content = -content;
    }
    let prim = p.primitive_part();
    if prim.degree() == 0 {
        return Factorization { content, factors: Vec::new() };
    }
    let sqf = prim.squarefree_part();
    let mut irreducibles = factor_squarefree(&sqf);
    irreducibles.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    let mut rest = prim;
    let mut factors = Vec::with_capacity(irreducibles.len());
    for g in irreducibles {
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&g) {
            rest = q;
            mult += 1;
        }
        assert!(mult > 0, "squarefree factor must divide the input");
        factors.push((g, mult));
    }
    assert!(rest.is_one_poly(), "leftover cofactor after factorization");
    let out = Factorization { content, factors };
    assert_eq!(&out.product(), p, "factorization does not reconstruct input");
    out
}

trait OnePoly {
    fn is_one_poly(&self) -> bool;
}

impl OnePoly for IntPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == 0 && self.leading().is_some_and(One::is_one)
    }
}

/// Irreducible factors of a primitive squarefree polynomial with positive leading coefficient.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPoly::x()).expect("x divides f");
        let mut out = vec![IntPoly::x()];
        if rest.degree() > 0 {
            out.extend(factor_squarefree(&rest));
        }
        return out;
    }
    if f.is_monic() {
        return zassenhaus(f);
    }
    // F(x) = a^(n-1) f(x / a) is monic; factors g of F give pp(g(a x)) for f
    let a = f.leading().unwrap().clone();
    let n = f.degree();
    let mut apow = vec![BigInt::one(); n];
    for i in 1..n {
        apow[i] = &apow[i - 1] * &a;
    }
    let monic = IntPoly::new(
        (0..=n)
            .map(|i| if i == n { BigInt::one() } else { f.coeff(i) * &apow[n - 1 - i] })
            .collect(),
    );
    zassenhaus(&monic)
        .into_iter()
        .map(|g| {
            let mut scaled = Vec::with_capacity(g.degree() + 1);
            let mut ap = BigInt::one();
            for c in g.coeffs() {
                scaled.push(c * &ap);
                ap *= &a;
            }
            IntPoly::new(scaled).primitive_part()
        })
        .collect()
}

/// Degrees reachable as sums of sub-multisets of `degs`.
fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

struct PrimeChoice {
    p: u64,
    modular: PolyModP,
    count: usize,
}

/// Odd primes where `f` stays squarefree with the same degree.
fn good_odd_primes(f: &IntPoly) -> impl Iterator<Item = (u64, PolyModP)> + '_ {
    PRIMES.iter().copied().filter(|&p| p > 2).filter_map(move |p| {
        let fm = PolyModP::from_int_poly(f, p);
        (fm.degree() == f.degree() && fm.is_squarefree()).then_some((p, fm))
    })
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<PrimeChoice> = None;
    for (p, fm) in good_odd_primes(f).take(PATTERN_PRIMES) {
        let degs = fm.factor_degrees();
        if degs.len() == 1 {
            return vec![f.clone()];
        }
        for (a, b) in allowed.iter_mut().zip(subset_sums(&degs, n)) {
            *a &= b;
        }
        if !allowed[1..n].iter().any(|&b| b) {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|b| degs.len() < b.count) {
            best = Some(PrimeChoice { p, modular: fm, count: degs.len() });
        }
    }
    let choice = best.expect("some small prime keeps f squarefree");
    let mut rng = ChaCha8Rng::seed_from_u64(choice.p);
    let modular = choice.modular.factor_squarefree(&mut rng);
    let bound = factor_coefficient_bound(f) * 2;
    let k = lift_exponent(choice.p, &bound);
    let modulus = num_traits::pow(BigInt::from(choice.p), k as usize);
    let lifted = multifactor_lift(f, &modular, k);
    recombine(f, lifted, &modulus, &allowed)
}

/// Zassenhaus subset recombination of lifted monic factors.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt, allowed: &[bool]) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].degree()).sum();
            if allowed[deg] {
                let prod = idx.iter().fold(IntPoly::one(), |acc, &i| &acc * &lifted[i]);
                let cand = symmetric_mod(&prod, modulus);
                let c0 = cand.coeff(0);
                let r0 = rest.coeff(0);
                let const_ok = c0.is_zero() || (&r0 % &c0).is_zero();
                if const_ok {
                    if let Some(q) = rest.div_exact(&cand) {
                        rest = q;
                        for &i in idx.iter().rev() {
                            lifted.remove(i);
                        }
                        out.push(cand);
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Prime `p` among the first [`FAST_PATH_PRIMES`] modulo which `f` is irreducible,
/// if any. Such a prime certifies irreducibility over the integers for primitive `f`.
pub fn irreducibility_witness(f: &IntPoly) -> Option<u64> {
    if f.degree() == 0 || !f.content().is_one() {
        return None;
    }
    let lc = f.leading()?.clone();
    PRIMES[..FAST_PATH_PRIMES].iter().copied().find(|&p| {
        if (&lc % BigInt::from(p)).is_zero() {
            return false;
        }
        let fm = PolyModP::from_int_poly(f, p);
        fm.is_squarefree() && fm.factor_degrees().len() == 1
    })
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.is_zero() || f.degree() == 0 {
        return false;
    }
    if irreducibility_witness(f).is_some() {
        return true;
    }
    factor(f).is_irreducible()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("no factor has a single root in (2, R) with the rest in (-2, 2): {0}")]
    NoFactor(String),
    #[error("{0} factors have a root in (2, R)")]
    MultipleQualifying(usize),
}

/// The irreducible factor carrying the root in `(2, R)`, provided its other
/// roots all lie in `(-2, 2)`.
pub fn select_salem_factor(f: &Factorization, thr: &Threshold) -> Result<IntPoly, SelectError> {
    let two = Rational::from_integer(2.into());
    let upper = Interval::new(two.clone(), thr.r().clone()).expect("R > 2");
    let middle = Interval::new(-two.clone(), two.clone()).expect("-2 < 2");
    let mut hits = Vec::new();
    for (g, mult) in &f.factors {
        let n = match count_roots(g, &upper) {
            Ok(n) => n,
            Err(PolyError::EndpointRoot(at)) => {
                return Err(SelectError::NoFactor(format!("factor {g} vanishes at {at}")));
            }
            Err(e) => return Err(SelectError::NoFactor(e.to_string())),
        };
        if n > 0 {
            hits.push((g, n * mult));
        }
    }
    let total: usize = hits.iter().map(|(_, n)| n).sum();
    if total > 1 {
        return Err(SelectError::MultipleQualifying(total));
    }
    let Some((g, _)) = hits.pop() else {
        return Err(SelectError::NoFactor("no root in (2, R)".into()));
    };
    if g.degree() < 2 {
        return Err(SelectError::NoFactor(format!("qualifying factor {g} is linear")));
    }
    match count_roots(g, &middle) {
        Ok(k) if k + 1 == g.degree() => Ok(g.clone()),
        Ok(k) => Err(SelectError::NoFactor(format!(
            "factor {g} has {k} roots in (-2, 2), expected {}",
            g.degree() - 1
        ))),
        Err(e) => Err(SelectError::NoFactor(e.to_string())),
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.content)?;
        for (g, m) in &self.factors {
            match m {
                1 => write!(f, " * ({g})")?,
                m => write!(f, " * ({g})^{m}")?,
            }
        }
        Ok(())
    }
}
