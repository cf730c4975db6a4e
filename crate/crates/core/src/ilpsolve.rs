//! Exact integer feasibility for [`ConstraintSystem`]s.
//!
//! The LP relaxation is handled by a bounded-variable phase-1 simplex in the
//! style of SMT arithmetic solvers: every row defines a slack variable
//! `s_j = A_j . a` with lower bound `b_j`, every coefficient has box bounds,
//! and pivoting only restores bound violations. There is no objective.
//! Bland's rule (smallest index first) on both the leaving and entering
//! choice guarantees termination.
//!
//! The production path keeps the tableau fraction-free over the integers;
//! a field-generic rational tableau with identical pivoting serves as the
//! reference. Integrality is reached by depth-first branch-and-bound on the
//! same tableau. Tightening and restoring bounds never invalidates the tableau,
//! so each node resumes from its parent's basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::constraints::ConstraintSystem;
use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible(Vec<BigInt>),
    Infeasible,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }
}

/// Outcome of the rational relaxation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Feasible(Vec<T>),
    Infeasible,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub pivots: u64,
    pub max_depth: usize,
}

/// Rows and boxes of a system viewed over the rationals, with the current
/// branching bounds on the original variables.
#[derive(Debug, Clone)]
pub struct Relaxation<'a> {
    pub system: &'a ConstraintSystem,
    pub bounds: Vec<(BigInt, BigInt)>,
}

impl<'a> Relaxation<'a> {
    pub fn new(system: &'a ConstraintSystem) -> Self {
        Relaxation { system, bounds: system.boxes.clone() }
    }
}

/// Dense bounded-variable tableau.
///
/// Variables `0..n` are the unknowns, `n..n+m` the row slacks. Row `r` reads
/// `x[basic[r]] = sum_k rows[r][k] * x[k]` over nonbasic `k`.
#[derive(Debug, Clone)]
struct Tableau<T> {
    n: usize,
    rows: Vec<Vec<T>>,
    basic: Vec<usize>,
    /// Row of a basic variable, `None` when nonbasic.
    row_of: Vec<Option<usize>>,
    lower: Vec<Option<T>>,
    upper: Vec<Option<T>>,
    value: Vec<T>,
    pivots: u64,
}

impl<T: ExactField> Tableau<T> {
    fn new(sys: &ConstraintSystem, bounds: &[(BigInt, BigInt)]) -> Self {
        let n = sys.num_vars();
        let m = sys.rows.len();
        let total = n + m;
        let mut lower: Vec<Option<T>> = bounds.iter().map(|(l, _)| Some(T::from_int(l))).collect();
        let mut upper: Vec<Option<T>> = bounds.iter().map(|(_, h)| Some(T::from_int(h))).collect();
        lower.extend(sys.rows.iter().map(|r| Some(T::from_int(&r.bound))));
        upper.extend((0..m).map(|_| None));

        let mut value: Vec<T> = (0..n)
            .map(|i| {
                let z = T::zero();
                match (&lower[i], &upper[i]) {
                    (Some(l), _) if z < *l => l.clone(),
                    (_, Some(h)) if z > *h => h.clone(),
                    _ => z,
                }
            })
            .collect();
        let mut rows = Vec::with_capacity(m);
        for r in &sys.rows {
            let mut row = vec![T::zero(); total];
            let mut v = T::zero();
            for (k, c) in r.coeffs.iter().enumerate() {
                let c = T::from_int(c);
                v = v + c.clone() * value[k].clone();
                row[k] = c;
            }
            value.push(v);
            rows.push(row);
        }
        let basic: Vec<usize> = (n..total).collect();
        let mut row_of = vec![None; total];
        for (r, &b) in basic.iter().enumerate() {
            row_of[b] = Some(r);
        }
        Tableau { n, rows, basic, row_of, lower, upper, value, pivots: 0 }
    }

    fn below_lower(&self, v: usize) -> bool {
        self.lower[v].as_ref().is_some_and(|l| self.value[v] < *l)
    }

    fn above_upper(&self, v: usize) -> bool {
        self.upper[v].as_ref().is_some_and(|u| self.value[v] > *u)
    }

    fn can_increase(&self, v: usize) -> bool {
        self.upper[v].as_ref().is_none_or(|u| self.value[v] < *u)
    }

    fn can_decrease(&self, v: usize) -> bool {
        self.lower[v].as_ref().is_none_or(|l| self.value[v] > *l)
    }

    /// Moves a nonbasic variable to `target`, updating every basic value.
    fn update_nonbasic(&mut self, j: usize, target: T) {
        debug_assert!(self.row_of[j].is_none());
        let delta = target.clone() - self.value[j].clone();
        if delta.is_zero() {
            return;
        }
        for (r, row) in self.rows.iter().enumerate() {
            let c = &row[j];
            if !c.is_zero() {
                let b = self.basic[r];
                self.value[b] = self.value[b].clone() + c.clone() * delta.clone();
            }
        }
        self.value[j] = target;
    }

    /// Swaps basic `self.basic[r]` with nonbasic `j`, then sets the leaving
    /// variable to `target`.
    fn pivot_and_update(&mut self, r: usize, j: usize, target: T) {
        let i = self.basic[r];
        let a_ij = self.rows[r][j].clone();
        let theta = (target.clone() - self.value[i].clone()) / a_ij.clone();
        self.value[i] = target;
        self.value[j] = self.value[j].clone() + theta.clone();
        for (k, row) in self.rows.iter().enumerate() {
            if k != r && !row[j].is_zero() {
                let b = self.basic[k];
                self.value[b] = self.value[b].clone() + row[j].clone() * theta.clone();
            }
        }
        self.pivot(r, j);
    }

    fn pivot(&mut self, r: usize, j: usize) {
        self.pivots += 1;
        let i = self.basic[r];
        let a_ij = self.rows[r][j].clone();
        // x_j = (x_i - sum_{k != j} a_rk x_k) / a_ij
        let mut new_row: Vec<T> = self.rows[r]
            .iter()
            .map(|c| if c.is_zero() { T::zero() } else { -(c.clone() / a_ij.clone()) })
            .collect();
        new_row[j] = T::zero();
        new_row[i] = T::one() / a_ij;
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let c = std::mem::replace(&mut row[j], T::zero());
            if c.is_zero() {
                continue;
            }
            for (dst, src) in row.iter_mut().zip(&new_row) {
                if !src.is_zero() {
                    *dst = dst.clone() + c.clone() * src.clone();
                }
            }
        }
        self.rows[r] = new_row;
        self.basic[r] = j;
        self.row_of[j] = Some(r);
        self.row_of[i] = None;
    }

    /// Restores all bounds or proves infeasibility.
    fn check(&mut self) -> bool {
        loop {
            // leaving variable: smallest index among violated basics
            let mut leaving: Option<(usize, usize)> = None;
            for (r, &b) in self.basic.iter().enumerate() {
                if (self.below_lower(b) || self.above_upper(b)) && leaving.is_none_or(|(_, lb)| b < lb) {
                    leaving = Some((r, b));
                }
            }
            let Some((r, b)) = leaving else {
                return true;
            };
            let raise = self.below_lower(b);
            let total = self.value.len();
            let entering = (0..total).find(|&k| {
                if self.row_of[k].is_some() {
                    return false;
                }
                let c = &self.rows[r][k];
                if c.is_zero() {
                    return false;
                }
                let up = c.is_positive() == raise;
                if up {
                    self.can_increase(k)
                } else {
                    self.can_decrease(k)
                }
            });
            let Some(k) = entering else {
                return false;
            };
            let target = if raise {
                self.lower[b].clone().expect("violated lower bound exists")
            } else {
                self.upper[b].clone().expect("violated upper bound exists")
            };
            self.pivot_and_update(r, k, target);
        }
    }

    /// Tightens (or restores) the bounds of an original variable, shifting
    /// its value back into range if it is nonbasic.
    fn set_bounds(&mut self, v: usize, lo: T, hi: T) {
        self.lower[v] = Some(lo.clone());
        self.upper[v] = Some(hi.clone());
        if self.row_of[v].is_none() {
            if self.value[v] < lo {
                self.update_nonbasic(v, lo);
            } else if self.value[v] > hi {
                self.update_nonbasic(v, hi);
            }
        }
    }

    fn point(&self) -> Vec<T> {
        self.value[..self.n].to_vec()
    }
}

impl<T: ExactField> Node for Tableau<T> {
    fn check(&mut self) -> bool {
        Tableau::check(self)
    }

    fn pivots(&self) -> u64 {
        self.pivots
    }

    fn pick(&self) -> Option<Pick> {
        let mut best: Option<(usize, T)> = None;
        for v in 0..self.n {
            let x = &self.value[v];
            if x.is_integral() {
                continue;
            }
            let dist = x.frac_distance();
            if best.as_ref().is_none_or(|(_, b)| dist > *b) {
                best = Some((v, dist));
            }
        }
        let (v, _) = best?;
        let x = &self.value[v];
        let floor = x.floor_int();
        let frac = x.clone() - T::from_int(&floor);
        let down_first = frac.clone() + frac <= T::one();
        Some(Pick { var: v, floor, down_first })
    }

    fn integer_point(&self) -> Vec<BigInt> {
        self.value[..self.n].iter().map(ExactField::floor_int).collect()
    }

    fn var_bounds(&self, v: usize) -> (BigInt, BigInt) {
        let lo = self.lower[v].as_ref().expect("original variables are boxed");
        let hi = self.upper[v].as_ref().expect("original variables are boxed");
        (lo.floor_int(), hi.floor_int())
    }

    fn set_var_bounds(&mut self, v: usize, lo: &BigInt, hi: &BigInt) {
        self.set_bounds(v, T::from_int(lo), T::from_int(hi));
    }
}

/// Fraction-free tableau over the integers.
///
/// All rows share the denominator `den > 0`: row `r` reads
/// `den * x[basic[r]] = sum_k rows[r][k] * x[k]` over nonbasic `k`. Pivots
/// follow the integer-preserving (Bareiss) update, so every division is exact
/// and no gcd is ever taken. Nonbasic variables always sit at integer values,
/// which makes each basic value `num[r] / den` with an integer `num[r]`.
#[derive(Debug, Clone)]
struct IntTableau {
    n: usize,
    rows: Vec<Vec<BigInt>>,
    den: BigInt,
    basic: Vec<usize>,
    row_of: Vec<Option<usize>>,
    lower: Vec<Option<BigInt>>,
    upper: Vec<Option<BigInt>>,
    /// Values of nonbasic variables; stale for basic ones.
    nonbasic_value: Vec<BigInt>,
    num: Vec<BigInt>,
    pivots: u64,
}

impl IntTableau {
    fn new(sys: &ConstraintSystem, bounds: &[(BigInt, BigInt)]) -> Self {
        let n = sys.num_vars();
        let m = sys.rows.len();
        let total = n + m;
        let mut lower: Vec<Option<BigInt>> = bounds.iter().map(|(l, _)| Some(l.clone())).collect();
        let mut upper: Vec<Option<BigInt>> = bounds.iter().map(|(_, h)| Some(h.clone())).collect();
        lower.extend(sys.rows.iter().map(|r| Some(r.bound.clone())));
        upper.extend((0..m).map(|_| None));
        let mut nonbasic_value: Vec<BigInt> = bounds
            .iter()
            .map(|(l, h)| BigInt::zero().clamp(l.clone(), h.clone().max(l.clone())))
            .collect();
        nonbasic_value.extend((0..m).map(|_| BigInt::zero()));
        let rows: Vec<Vec<BigInt>> = sys
            .rows
            .iter()
            .map(|r| {
                let mut row = r.coeffs.clone();
                row.resize(total, BigInt::zero());
                row
            })
            .collect();
        let basic: Vec<usize> = (n..total).collect();
        let mut row_of = vec![None; total];
        for (r, &b) in basic.iter().enumerate() {
            row_of[b] = Some(r);
        }
        let mut tab = IntTableau {
            n,
            rows,
            den: BigInt::one(),
            basic,
            row_of,
            lower,
            upper,
            nonbasic_value,
            num: Vec::new(),
            pivots: 0,
        };
        tab.recompute();
        tab
    }

    fn recompute(&mut self) {
        self.num = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.nonbasic_value)
                    .enumerate()
                    .filter(|(k, (c, _))| self.row_of[*k].is_none() && !c.is_zero())
                    .map(|(_, (c, x))| c * x)
                    .sum()
            })
            .collect();
    }

    /// `den * value(v)`.
    fn scaled(&self, v: usize) -> BigInt {
        match self.row_of[v] {
            Some(r) => self.num[r].clone(),
            None => &self.nonbasic_value[v] * &self.den,
        }
    }

    fn below_lower(&self, v: usize) -> bool {
        self.lower[v].as_ref().is_some_and(|l| self.scaled(v) < l * &self.den)
    }

    fn above_upper(&self, v: usize) -> bool {
        self.upper[v].as_ref().is_some_and(|u| self.scaled(v) > u * &self.den)
    }

    fn can_increase(&self, v: usize) -> bool {
        self.upper[v].as_ref().is_none_or(|u| self.nonbasic_value[v] < *u)
    }

    fn can_decrease(&self, v: usize) -> bool {
        self.lower[v].as_ref().is_none_or(|l| self.nonbasic_value[v] > *l)
    }

    fn update_nonbasic(&mut self, j: usize, target: BigInt) {
        let delta = &target - &self.nonbasic_value[j];
        if delta.is_zero() {
            return;
        }
        for (row, num) in self.rows.iter().zip(self.num.iter_mut()) {
            if !row[j].is_zero() {
                *num += &row[j] * &delta;
            }
        }
        self.nonbasic_value[j] = target;
    }

    /// Brings nonbasic `j` into row `r`; the leaving variable is fixed at `target`.
    fn pivot(&mut self, r: usize, j: usize, target: BigInt) {
        self.pivots += 1;
        let i = self.basic[r];
        let p = self.rows[r][j].clone();
        let den = self.den.clone();
        let pivot_row: Vec<BigInt> = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let c = std::mem::take(&mut row[j]);
            for (l, dst) in row.iter_mut().enumerate() {
                if l == j {
                    continue;
                }
                let src = &pivot_row[l];
                if dst.is_zero() && (src.is_zero() || c.is_zero()) {
                    continue;
                }
                let v = &p * &*dst - &c * src;
                *dst = v / &den;
            }
            row[i] = c;
        }
        let row = &mut self.rows[r];
        for (l, x) in row.iter_mut().enumerate() {
            if l != j {
                *x = -std::mem::take(x);
            }
        }
        row[i] = den;
        row[j] = BigInt::zero();
        self.den = p;
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for row in &mut self.rows {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        self.basic[r] = j;
        self.row_of[j] = Some(r);
        self.row_of[i] = None;
        self.nonbasic_value[i] = target;
        self.recompute();
    }

    fn check(&mut self) -> bool {
        loop {
            let mut leaving: Option<(usize, usize)> = None;
            for (r, &b) in self.basic.iter().enumerate() {
                if (self.below_lower(b) || self.above_upper(b)) && leaving.is_none_or(|(_, lb)| b < lb) {
                    leaving = Some((r, b));
                }
            }
            let Some((r, b)) = leaving else {
                return true;
            };
            let raise = self.below_lower(b);
            let entering = (0..self.rows[r].len()).find(|&k| {
                if self.row_of[k].is_some() {
                    return false;
                }
                let c = &self.rows[r][k];
                if c.is_zero() {
                    return false;
                }
                if c.is_positive() == raise {
                    self.can_increase(k)
                } else {
                    self.can_decrease(k)
                }
            });
            let Some(k) = entering else {
                return false;
            };
            let target = if raise {
                self.lower[b].clone().expect("violated lower bound exists")
            } else {
                self.upper[b].clone().expect("violated upper bound exists")
            };
            self.pivot(r, k, target);
        }
    }
}

impl Node for IntTableau {
    fn check(&mut self) -> bool {
        IntTableau::check(self)
    }

    fn pivots(&self) -> u64 {
        self.pivots
    }

    fn pick(&self) -> Option<Pick> {
        let mut best: Option<(usize, BigInt, BigInt, BigInt)> = None;
        for v in 0..self.n {
            let Some(r) = self.row_of[v] else { continue };
            let (floor, frac) = self.num[r].div_mod_floor(&self.den);
            if frac.is_zero() {
                continue;
            }
            let dist = (&self.den - &frac).min(frac.clone());
            if best.as_ref().is_none_or(|(_, _, _, b)| dist > *b) {
                best = Some((v, floor, frac, dist));
            }
        }
        let (var, floor, frac, _) = best?;
        let down_first = (&frac << 1) <= self.den;
        Some(Pick { var, floor, down_first })
    }

    fn integer_point(&self) -> Vec<BigInt> {
        (0..self.n).map(|v| self.scaled(v) / &self.den).collect()
    }

    fn var_bounds(&self, v: usize) -> (BigInt, BigInt) {
        (
            self.lower[v].clone().expect("original variables are boxed"),
            self.upper[v].clone().expect("original variables are boxed"),
        )
    }

    fn set_var_bounds(&mut self, v: usize, lo: &BigInt, hi: &BigInt) {
        self.lower[v] = Some(lo.clone());
        self.upper[v] = Some(hi.clone());
        if self.row_of[v].is_none() {
            let x = &self.nonbasic_value[v];
            if x < lo {
                self.update_nonbasic(v, lo.clone());
            } else if x > hi {
                self.update_nonbasic(v, hi.clone());
            }
        }
    }
}

/// Branching decision: variable, floor of its value, and which child first.
struct Pick {
    var: usize,
    floor: BigInt,
    down_first: bool,
}

/// What branch-and-bound needs from a relaxation.
trait Node {
    fn check(&mut self) -> bool;
    fn pivots(&self) -> u64;
    /// Most fractional original variable, lowest index on ties; `None` when
    /// the point is integral.
    fn pick(&self) -> Option<Pick>;
    fn integer_point(&self) -> Vec<BigInt>;
    fn var_bounds(&self, v: usize) -> (BigInt, BigInt);
    fn set_var_bounds(&mut self, v: usize, lo: &BigInt, hi: &BigInt);
}

/// Rational feasibility of the relaxation.
pub fn lp_feasible<T: ExactField>(r: &Relaxation<'_>) -> LpOutcome<T> {
    let mut tab = Tableau::<T>::new(r.system, &r.bounds);
    if tab.check() {
        LpOutcome::Feasible(tab.point())
    } else {
        LpOutcome::Infeasible
    }
}

/// Integer feasibility over the system's boxes.
pub fn ilp_feasible(sys: &ConstraintSystem) -> FeasibilityResult {
    ilp_feasible_with_stats(sys).0
}

/// [`ilp_feasible`] on the fraction-free integer tableau, with search statistics.
///
/// Branches on the most fractional variable (lowest index on ties) and
/// explores the child nearest the relaxed value first.
pub fn ilp_feasible_with_stats(sys: &ConstraintSystem) -> (FeasibilityResult, SolveStats) {
    if sys.boxes.iter().any(|(lo, hi)| lo > hi) {
        return (FeasibilityResult::Infeasible, SolveStats::default());
    }
    solve(sys, IntTableau::new(sys, &sys.boxes))
}

/// The same search with the relaxation kept over the field `T`.
///
/// Pivot and branching rules match [`ilp_feasible_with_stats`], so both
/// return the same point.
pub fn ilp_feasible_over<T: ExactField>(sys: &ConstraintSystem) -> (FeasibilityResult, SolveStats) {
    if sys.boxes.iter().any(|(lo, hi)| lo > hi) {
        return (FeasibilityResult::Infeasible, SolveStats::default());
    }
    solve(sys, Tableau::<T>::new(sys, &sys.boxes))
}

fn solve(sys: &ConstraintSystem, mut tab: impl Node) -> (FeasibilityResult, SolveStats) {
    let mut stats = SolveStats::default();
    let found = branch(&mut tab, &mut stats, 0);
    stats.pivots = tab.pivots();
    match found {
        Some(a) => {
            assert!(sys.satisfied_by(&a), "solver returned a point violating the system");
            (FeasibilityResult::Feasible(a), stats)
        }
        None => (FeasibilityResult::Infeasible, stats),
    }
}

fn branch(tab: &mut impl Node, stats: &mut SolveStats, depth: usize) -> Option<Vec<BigInt>> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(depth);
    if !tab.check() {
        return None;
    }
    let Some(Pick { var, floor, down_first }) = tab.pick() else {
        return Some(tab.integer_point());
    };
    let (lo, hi) = tab.var_bounds(var);
    let ceil = &floor + 1;
    let down = (lo.clone(), floor);
    let up = (ceil, hi.clone());
    let children = if down_first { [down, up] } else { [up, down] };
    for (clo, chi) in children {
        if clo > chi {
            continue;
        }
        tab.set_var_bounds(var, &clo, &chi);
        let found = branch(tab, stats, depth + 1);
        tab.set_var_bounds(var, &lo, &hi);
        if found.is_some() {
            return found;
        }
    }
    None
}
