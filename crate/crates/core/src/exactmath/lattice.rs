//! LLL reduction of positive definite Gram matrices (exact, delta = 3/4) and
//! Fincke-Pohst enumeration of short vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, RatMatrix};
use super::poly::rat_to_f64;
use crate::error::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn round_rat(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Gram-Schmidt data of a Gram matrix: `mu[i][j]` for `j < i` and squared
/// lengths `b[i]`.
fn gram_schmidt(g: &RatMatrix) -> (RatMatrix, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = if b[j].is_zero() { BigRational::zero() } else { s / &b[j] };
        }
        let mut s = g[i][i].clone();
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b[i] = s;
    }
    (mu, b)
}

pub fn check_positive_definite(g: &RatMatrix) -> Result<()> {
    let n = g.len();
    for i in 0..n {
        if g[i].len() != n {
            return Err(Error::domain("Gram matrix is not square"));
        }
        for j in 0..i {
            if g[i][j] != g[j][i] {
                return Err(Error::domain("Gram matrix is not symmetric"));
            }
        }
    }
    let (_, b) = gram_schmidt(g);
    if b.iter().any(|x| !x.is_positive()) {
        return Err(Error::domain("Gram matrix is not positive definite"));
    }
    Ok(())
}

/// Result of reducing a Gram matrix: `gram = U * G * U^T`.
#[derive(Clone, Debug)]
pub struct LllResult {
    pub gram: RatMatrix,
    pub u: IntegerMatrix,
}

/// Exact LLL with delta = 3/4 on a positive definite Gram matrix.
pub fn lll_gram(g: &RatMatrix) -> Result<LllResult> {
    check_positive_definite(g)?;
    let n = g.len();
    let mut g = g.clone();
    let mut u = IntegerMatrix::identity(n).into_rows();
    if n <= 1 {
        return Ok(LllResult { gram: g, u: IntegerMatrix::new(u, n) });
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (mut mu, mut b) = gram_schmidt(&g);

    fn reduce(g: &mut RatMatrix, u: &mut [Vec<BigInt>], mu: &mut RatMatrix, k: usize, j: usize) {
        let q = round_rat(&mu[k][j]);
        if q.is_zero() {
            return;
        }
        let qr = BigRational::from_integer(q.clone());
        let n = g.len();
        for i in 0..n {
            let d = &qr * &g[j][i];
            g[k][i] -= d;
        }
        for i in 0..n {
            let d = &qr * &g[i][j];
            g[i][k] -= d;
        }
        for i in 0..n {
            let d = &q * &u[j][i];
            u[k][i] -= d;
        }
        for l in 0..j {
            let d = &qr * &mu[j][l];
            mu[k][l] -= d;
        }
        mu[k][j] -= qr;
    }

    let mut k = 1;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        assert!(guard < 10_000_000, "LLL failed to terminate");
        reduce(&mut g, &mut u, &mut mu, k, k - 1);
        let lhs = b[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if lhs < rhs {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            let gs = gram_schmidt(&g);
            mu = gs.0;
            b = gs.1;
            k = (k - 1).max(1);
        } else {
            for j in (0..k - 1).rev() {
                reduce(&mut g, &mut u, &mut mu, k, j);
            }
            k += 1;
        }
    }
    Ok(LllResult { gram: g, u: IntegerMatrix::new(u, n) })
}

fn canonical_sign(v: &mut [BigInt]) {
    if let Some(last) = v.iter().rev().find(|x| !x.is_zero()) {
        if last.is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
}

fn quad_form(g: &RatMatrix, v: &[BigInt]) -> BigRational {
    let n = v.len();
    let mut s = BigRational::zero();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            s += &g[i][j] * BigRational::from_integer(&v[i] * &v[j]);
        }
    }
    s
}

/// Every nonzero integer vector `v` with `v^T G v <= bound`, one per `±`
/// pair (last nonzero coordinate positive), sorted by value and then by
/// coordinates read from the last one.
pub fn enumerate_short_vectors(g: &RatMatrix, bound: &BigRational) -> Result<Vec<Vec<BigInt>>> {
    check_positive_definite(g)?;
    let n = g.len();
    if n == 0 || !bound.is_positive() {
        return Ok(Vec::new());
    }
    let red = lll_gram(g)?;
    let (mu, b) = gram_schmidt(&red.gram);
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut y = vec![BigInt::zero(); n];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        budget: BigRational,
        y: &mut Vec<BigInt>,
        mu: &RatMatrix,
        b: &[BigRational],
        u: &IntegerMatrix,
        found: &mut Vec<Vec<BigInt>>,
    ) {
        let n = y.len();
        let mut c = BigRational::zero();
        for j in i + 1..n {
            c -= &mu[j][i] * BigRational::from_integer(y[j].clone());
        }
        let fits = |x: &BigInt| {
            let d = BigRational::from_integer(x.clone()) - &c;
            &b[i] * &d * &d <= budget
        };
        let x0 = round_rat(&c);
        let mut lo = x0.clone();
        while fits(&(&lo - 1)) {
            lo -= 1;
        }
        let mut hi = x0.clone();
        while fits(&(&hi + 1)) {
            hi += 1;
        }
        if !fits(&x0) {
            return;
        }
        let mut x = lo;
        while x <= hi {
            let d = BigRational::from_integer(x.clone()) - &c;
            let rest = &budget - &b[i] * &d * &d;
            y[i] = x.clone();
            if i == 0 {
                if y.iter().any(|t| !t.is_zero()) {
                    let mut v = vec![BigInt::zero(); n];
                    for (k, yk) in y.iter().enumerate() {
                        if yk.is_zero() {
                            continue;
                        }
                        for (j, vj) in v.iter_mut().enumerate() {
                            *vj += yk * u.get(k, j);
                        }
                    }
                    found.push(v);
                }
            } else {
                rec(i - 1, rest, y, mu, b, u, found);
            }
            x += 1;
        }
        y[i] = BigInt::zero();
    }

    rec(n - 1, bound.clone(), &mut y, &mu, &b, &red.u, &mut found);
    let mut keyed: Vec<(BigRational, Vec<BigInt>, Vec<BigInt>)> = found
        .into_iter()
        .filter_map(|mut v| {
            let last_positive = v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
            if !last_positive {
                return None;
            }
            canonical_sign(&mut v);
            let rev: Vec<BigInt> = v.iter().rev().cloned().collect();
            Some((quad_form(g, &v), rev, v))
        })
        .collect();
    keyed.sort();
    keyed.dedup();
    Ok(keyed.into_iter().map(|(_, _, v)| v).collect())
}

/// Floating-point Fincke-Pohst over an already reduced Gram matrix.
/// Vectors are produced in the coordinates of that Gram matrix; only one
/// of each `±` pair is visited.
pub struct FloatEnumerator {
    q: Vec<Vec<f64>>,
    n: usize,
}

impl FloatEnumerator {
    pub fn new(g: &RatMatrix) -> Option<Self> {
        let (mu, b) = gram_schmidt(g);
        let n = g.len();
        if b.iter().any(|x| !x.is_positive()) {
            return None;
        }
        let mut q = vec![vec![0.0; n]; n];
        for i in 0..n {
            q[i][i] = rat_to_f64(&b[i]);
            for j in i + 1..n {
                q[i][j] = rat_to_f64(&mu[j][i]);
            }
        }
        Some(FloatEnumerator { q, n })
    }

    pub fn from_f64(g: &[Vec<f64>]) -> Option<Self> {
        let n = g.len();
        let mut mu = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for i in 0..n {
            for j in 0..i {
                let mut s = g[i][j];
                for l in 0..j {
                    s -= mu[j][l] * mu[i][l] * b[l];
                }
                mu[i][j] = s / b[j];
            }
            let mut s = g[i][i];
            for l in 0..i {
                s -= mu[i][l] * mu[i][l] * b[l];
            }
            if s.is_nan() || s <= 0.0 {
                return None;
            }
            b[i] = s;
        }
        let mut q = vec![vec![0.0; n]; n];
        for i in 0..n {
            q[i][i] = b[i];
            for j in i + 1..n {
                q[i][j] = mu[j][i];
            }
        }
        Some(FloatEnumerator { q, n })
    }

    /// Calls `visit(v, value)` for each vector with value <= bound (plus a
    /// relative slack of 1e-9); stops early when `visit` returns false.
    pub fn for_each<F: FnMut(&[i64], f64) -> bool>(&self, bound: f64, mut visit: F) {
        let n = self.n;
        if n == 0 {
            return;
        }
        let slack = bound * (1.0 + 1e-9) + 1e-12;
        let mut x = vec![0i64; n];
        let mut stop = false;
        self.rec(n - 1, slack, &mut x, &mut visit, &mut stop, true);
    }

    fn rec<F: FnMut(&[i64], f64) -> bool>(
        &self,
        i: usize,
        budget: f64,
        x: &mut Vec<i64>,
        visit: &mut F,
        stop: &mut bool,
        all_zero_above: bool,
    ) {
        let n = self.n;
        let mut c = 0.0;
        for j in i + 1..n {
            c -= self.q[i][j] * x[j] as f64;
        }
        let r = (budget / self.q[i][i]).max(0.0).sqrt();
        let lo = if all_zero_above { 0 } else { (c - r).ceil() as i64 };
        let hi = (c + r).floor() as i64;
        for xi in lo..=hi {
            if *stop {
                return;
            }
            let d = xi as f64 - c;
            let rest = budget - self.q[i][i] * d * d;
            if rest < 0.0 {
                continue;
            }
            x[i] = xi;
            if i == 0 {
                if x.iter().any(|&t| t != 0) {
                    let total = self.value(x);
                    if !visit(x, total) {
                        *stop = true;
                    }
                }
            } else {
                self.rec(i - 1, rest, x, visit, stop, all_zero_above && xi == 0);
            }
        }
        x[i] = 0;
    }

    fn value(&self, x: &[i64]) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            let mut t = x[i] as f64;
            for j in i + 1..n {
                t += self.q[i][j] * x[j] as f64;
            }
            s += self.q[i][i] * t * t;
        }
        s
    }
}

/// Integer gcd helper used by callers reducing coordinate vectors.
pub fn vector_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn rat_matrix(rows: &[&[i64]]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}
