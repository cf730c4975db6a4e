//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use salem::constraints::ConstraintSystem;

// ---------------------------------------------------------------- roots

/// Horner evaluation of `p` (ascending) and its derivative.
fn eval_with_derivative(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// All complex roots of `p` (ascending, nonzero leading coefficient) by
/// Aberth-Ehrlich iteration.
pub fn aberth_roots(p: &[f64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let radius = 1.0 + p[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut biggest = 0.0f64;
        for k in 0..n {
            let (v, dv) = eval_with_derivative(p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[k] -= w;
                biggest = biggest.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z
}

pub const REAL_TOL: f64 = 1e-7;
pub const GAP: f64 = 1e-3;

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`, or
/// `None` when the numeric picture is too close to call.
pub fn numeric_root_count(p: &[i64], lo: f64, hi: f64) -> Option<usize> {
    let pf: Vec<f64> = p.iter().map(|&c| c as f64).collect();
    let roots = aberth_roots(&pf);
    let mut real: Vec<f64> = Vec::new();
    for r in &roots {
        let im = r.im.abs();
        if (REAL_TOL..GAP).contains(&im) {
            return None;
        }
        if im < REAL_TOL {
            real.push(r.re);
        }
    }
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut distinct: Vec<f64> = Vec::new();
    for x in real {
        match distinct.last() {
            Some(&y) if (x - y).abs() < 1e-6 => {}
            Some(&y) if (x - y).abs() < GAP => return None,
            _ => distinct.push(x),
        }
    }
    if distinct.iter().any(|&x| (x - lo).abs() < GAP || (x - hi).abs() < GAP) {
        return None;
    }
    Some(distinct.iter().filter(|&&x| x > lo && x < hi).count())
}

/// Random polynomial (ascending) of degree `1..=max_deg` with coefficients in
/// `[-c, c]` and nonzero leading term.
pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, c: i64) -> Vec<i64> {
    let deg = rng.random_range(1..=max_deg);
    let mut p: Vec<i64> = (0..=deg).map(|_| rng.random_range(-c..=c)).collect();
    while p[deg] == 0 {
        p[deg] = rng.random_range(-c..=c);
    }
    p
}

/// Random rational endpoints `lo < hi` as `(num, den)` pairs.
pub fn random_interval<R: Rng>(rng: &mut R) -> ((i64, i64), (i64, i64)) {
    loop {
        let a = (rng.random_range(-48..=48), rng.random_range(1..=8));
        let b = (rng.random_range(-48..=48), rng.random_range(1..=8));
        let (fa, fb) = (a.0 as f64 / a.1 as f64, b.0 as f64 / b.1 as f64);
        if fa < fb {
            return (a, b);
        } else if fb < fa {
            return (b, a);
        }
    }
}

// ---------------------------------------------------------------- ILP

pub struct SmallSystem {
    pub rows: Vec<(Vec<i64>, i64)>,
    pub boxes: Vec<(i64, i64)>,
}

impl SmallSystem {
    pub fn to_system(&self) -> ConstraintSystem {
        let rows: Vec<(&[i64], i64)> = self.rows.iter().map(|(c, b)| (c.as_slice(), *b)).collect();
        ConstraintSystem::from_i64(&rows, &self.boxes)
    }

    pub fn holds(&self, a: &[i64]) -> bool {
        self.rows
            .iter()
            .all(|(c, b)| c.iter().zip(a).map(|(x, y)| x * y).sum::<i64>() >= *b)
            && a.iter().zip(&self.boxes).all(|(x, (l, h))| l <= x && x <= h)
    }

    /// First integer point in lexicographic order, by exhaustive enumeration.
    pub fn enumerate(&self) -> Option<Vec<i64>> {
        if self.boxes.iter().any(|(l, h)| l > h) {
            return None;
        }
        let mut a: Vec<i64> = self.boxes.iter().map(|(l, _)| *l).collect();
        loop {
            if self.holds(&a) {
                return Some(a);
            }
            let mut i = 0;
            loop {
                if i == a.len() {
                    return None;
                }
                if a[i] < self.boxes[i].1 {
                    a[i] += 1;
                    break;
                }
                a[i] = self.boxes[i].0;
                i += 1;
            }
        }
    }
}

/// Up to 4 variables and 6 rows, entries and box ends in `[-10, 10]`.
pub fn random_system<R: Rng>(rng: &mut R) -> SmallSystem {
    let n = rng.random_range(1..=4);
    let m = rng.random_range(0..=6);
    let boxes = (0..n)
        .map(|_| {
            let a = rng.random_range(-10..=10);
            let b = rng.random_range(-10..=10);
            (a.min(b), a.max(b))
        })
        .collect();
    let rows = (0..m)
        .map(|_| ((0..n).map(|_| rng.random_range(-10..=10)).collect(), rng.random_range(-10..=10)))
        .collect();
    SmallSystem { rows, boxes }
}

// ---------------------------------------------------------------- factoring

fn eval_i(p: &[i128], x: i128) -> i128 {
    p.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// Quotient of monic `f` by monic `g` when the division is exact.
fn divide_monic(f: &[i128], g: &[i128]) -> Option<Vec<i128>> {
    let (n, k) = (f.len() - 1, g.len() - 1);
    if k > n {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![0i128; n - k + 1];
    for i in (0..=n - k).rev() {
        let c = r[i + k];
        q[i] = c;
        for j in 0..=k {
            r[i + j] -= c * g[j];
        }
    }
    r[..k].iter().all(|&c| c == 0).then_some(q)
}

fn divisors(v: i128) -> Vec<i128> {
    let v = v.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= v {
        if v % d == 0 {
            out.extend([d, -d]);
            if d * d != v {
                out.extend([v / d, -(v / d)]);
            }
        }
        d += 1;
    }
    out
}

/// A proper monic factor of the monic `f` of degree at most 6, found by
/// searching divisors of `f(0)`, `f(1)`, `f(-1)`.
fn find_factor(f: &[i128]) -> Option<Vec<i128>> {
    let n = f.len() - 1;
    if n <= 1 {
        return None;
    }
    assert!(n <= 6, "oracle handles degree at most 6");
    if f[0] == 0 {
        return Some(vec![0, 1]);
    }
    for t in divisors(f[0]) {
        if eval_i(f, t) == 0 {
            return Some(vec![-t, 1]);
        }
    }
    let (f0, f1, fm) = (f[0], eval_i(f, 1), eval_i(f, -1));
    for k in 2..=n / 2 {
        for &c in &divisors(f0) {
            for &v1 in &divisors(f1) {
                let g = if k == 2 {
                    vec![c, v1 - 1 - c, 1]
                } else {
                    let mut found = None;
                    for &vm in &divisors(fm) {
                        if (v1 + vm) % 2 != 0 {
                            continue;
                        }
                        let a = (v1 + vm) / 2 - c;
                        let b = (v1 - vm) / 2 - 1;
                        let g = vec![c, b, a, 1];
                        if divide_monic(f, &g).is_some() {
                            found = Some(g);
                            break;
                        }
                    }
                    match found {
                        Some(g) => g,
                        None => continue,
                    }
                };
                if divide_monic(f, &g).is_some() {
                    return Some(g);
                }
            }
        }
    }
    None
}

/// Irreducible monic factors (with repetition, sorted) of a monic `f` of
/// degree at most 6, ascending coefficients.
pub fn oracle_factor(f: &[i64]) -> Vec<Vec<i64>> {
    fn go(f: Vec<i128>, out: &mut Vec<Vec<i64>>) {
        if f.len() <= 1 {
            return;
        }
        match find_factor(&f) {
            Some(g) => {
                let q = divide_monic(&f, &g).expect("factor divides");
                go(g, out);
                go(q, out);
            }
            None => out.push(f.iter().map(|&c| c as i64).collect()),
        }
    }
    let mut out = Vec::new();
    go(f.iter().map(|&c| c as i128).collect(), &mut out);
    out.sort();
    out
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic polynomial of degree `1..=6`: half the time a product of small
/// random monic factors, otherwise random coefficients in `[-10, 10]`.
pub fn random_monic<R: Rng>(rng: &mut R) -> Vec<i64> {
    if rng.random_bool(0.5) {
        let mut f = vec![1];
        loop {
            let left = 7 - f.len();
            if left == 0 {
                break;
            }
            let k = rng.random_range(1..=left.min(3));
            let mut g: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=3)).collect();
            g.push(1);
            f = mul(&f, &g);
            if f.len() > 1 && rng.random_bool(0.4) {
                break;
            }
        }
        f
    } else {
        let deg = rng.random_range(1..=6);
        let mut f: Vec<i64> = (0..deg).map(|_| rng.random_range(-10..=10)).collect();
        f.push(1);
        f
    }
}

/// Expands a library factorization into sorted ascending coefficient lists.
pub fn library_factors(f: &salem::Factorization) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (g, m) in &f.factors {
        let v = g.to_i64_vec().expect("small coefficients");
        for _ in 0..*m {
            out.push(v.clone());
        }
    }
    out.sort();
    out
}
