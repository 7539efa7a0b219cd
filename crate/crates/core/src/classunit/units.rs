//! Unit groups: torsion, independent units from candidates, saturation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::enumerate::IdealLattice;
use crate::error::{Error, Result};
use crate::exactmath::intfactor::{is_prime_u64, primes_up_to};
use crate::exactmath::matrix::{hnf, nullspace_mod_p, IntegerMatrix};
use crate::exactmath::modp::factor_mod_p;
use crate::numfield::{AlgebraicNumber, Field};

/// Lower bound for the regulator of any number field with positive unit rank.
pub const REGULATOR_LOWER_BOUND: f64 = 0.2;

pub(crate) fn unit_rank(field: &Field) -> usize {
    let (r1, r2) = field.signature();
    r1 + r2 - 1
}

/// `d_k log|sigma_k(u)|` over the r1 + r2 embeddings.
pub(crate) fn log_vector_elt(u: &AlgebraicNumber) -> Vec<f64> {
    let (r1, _) = u.field().signature();
    u.ln_abs_embeddings().iter().enumerate().map(|(k, &l)| if k < r1 { l } else { 2.0 * l }).collect()
}

/// Roots of unity: order and a generator.
pub(crate) fn torsion(field: &Field) -> (u64, AlgebraicNumber) {
    let n = field.degree();
    let minus_one = AlgebraicNumber::from_i64(field, -1);
    if field.signature().0 > 0 {
        return (2, minus_one);
    }
    let t2 = field.t2_form();
    let lat = IdealLattice::new(&t2, &crate::exactmath::matrix::IntegerMatrix::identity(n).into_rows())
        .expect("T2 is positive definite");
    let mut roots: Vec<(u64, AlgebraicNumber)> = Vec::new();
    lat.for_each(n as f64 * (1.0 + 1e-6), 1_000_000, |v, _| {
        let x = AlgebraicNumber::from_int_coords(field, &v);
        let mut p = x.clone();
        for k in 1..=200u64 {
            if p.is_one() {
                roots.push((k, x.clone()));
                break;
            }
            p = &p * &x;
        }
        true
    });
    // each visited root stands for the pair {x, -x}
    let w = 2 * roots.len() as u64;
    let gen = roots
        .iter()
        .flat_map(|(k, x)| {
            // order of -x
            let kk = if k % 2 == 1 { 2 * k } else if k % 4 == 2 { k / 2 } else { *k };
            [(*k, x.clone()), (kk, -x)]
        })
        .filter(|(k, _)| *k == w)
        .map(|(_, x)| x)
        .max_by(|a, b| a.coords().cmp(b.coords()))
        .unwrap_or(minus_one);
    (w.max(2), gen)
}

/// Product of signed powers of units, computed exactly.
pub(crate) fn unit_product(field: &Field, gens: &[AlgebraicNumber], exps: &[i64]) -> AlgebraicNumber {
    let mut num = AlgebraicNumber::one(field);
    let mut den = AlgebraicNumber::one(field);
    for (g, &e) in gens.iter().zip(exps) {
        if e > 0 {
            num = &num * &g.pow(e as u64);
        } else if e < 0 {
            den = &den * &g.pow(e.unsigned_abs());
        }
    }
    if den.is_one() {
        num
    } else {
        num.div(&den).expect("units are invertible")
    }
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

pub(crate) fn regulator(field: &Field, units: &[AlgebraicNumber]) -> f64 {
    let r = unit_rank(field);
    if r == 0 {
        return 1.0;
    }
    let m: Vec<Vec<f64>> = units.iter().map(|u| log_vector_elt(u)[..r].to_vec()).collect();
    det_f64(&m).abs()
}

// Float LLL on row vectors; returns the integer transform (rows).
fn lll_rows(v: &[Vec<f64>]) -> Vec<Vec<i64>> {
    let m = v.len();
    let mut b = v.to_vec();
    let mut u: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
    let mut k = 1;
    let mut iters = 0;
    while k < m && iters < 10_000 {
        iters += 1;
        // Gram-Schmidt from scratch (small dimensions)
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut mu = vec![vec![0.0; m]; m];
        for i in 0..m {
            let mut w = b[i].clone();
            for j in 0..i {
                let d = dot(&bs[j], &bs[j]);
                mu[i][j] = if d > 0.0 { dot(&b[i], &bs[j]) / d } else { 0.0 };
                for (wk, bk) in w.iter_mut().zip(&bs[j]) {
                    *wk -= mu[i][j] * bk;
                }
            }
            bs.push(w);
        }
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                for t in 0..b[k].len() {
                    b[k][t] -= q * b[j][t];
                }
                for t in 0..m {
                    u[k][t] -= qi * u[j][t];
                }
                for t in 0..=j {
                    mu[k][t] -= q * if t == j { 1.0 } else { mu[j][t] };
                }
            }
        }
        let bk = dot(&bs[k], &bs[k]);
        let bk1 = dot(&bs[k - 1], &bs[k - 1]);
        if bk >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bk1 {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    u
}

fn rank_f64(rows: &[Vec<f64>]) -> usize {
    let mut a = rows.to_vec();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    let tol = 1e-7 * scale;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let piv = (r..nr).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[piv][c].abs() <= tol {
            continue;
        }
        a.swap(r, piv);
        for i in r + 1..nr {
            let f = a[i][c] / a[r][c];
            for k in c..nc {
                a[i][k] -= f * a[r][k];
            }
        }
        r += 1;
    }
    r
}

// Solves x * B = v for square B (rows), in f64.
fn solve_left(b: &[Vec<f64>], v: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    // transpose: B^T x^T = v^T
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| b[j][i]).collect()).collect();
    let mut y = v.to_vec();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        y.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            y[r] -= f * y[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (y[r] - s) / a[r][r];
    }
    Some(x)
}

/// Maintains a basis (modulo torsion) of the group generated by the units
/// fed to it.
pub(crate) struct UnitLattice {
    field: Field,
    rank: usize,
    pub basis: Vec<AlgebraicNumber>,
}

impl UnitLattice {
    pub fn new(field: &Field) -> Self {
        UnitLattice { field: field.clone(), rank: unit_rank(field), basis: Vec::new() }
    }

    pub fn full(&self) -> bool {
        self.basis.len() == self.rank
    }

    fn logs(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|u| log_vector_elt(u)[..self.rank].to_vec()).collect()
    }

    /// Adds a unit; returns true if the generated group grew.
    pub fn add(&mut self, u: AlgebraicNumber) -> bool {
        if self.rank == 0 {
            return false;
        }
        let lu = log_vector_elt(&u)[..self.rank].to_vec();
        if lu.iter().all(|x| x.abs() < 1e-8) {
            return false;
        }
        let mut logs = self.logs();
        if !self.full() {
            logs.push(lu.clone());
            if rank_f64(&logs) > self.basis.len() {
                self.basis.push(u);
                self.reduce();
                return true;
            }
            // dependent on a partial basis: find the relation in a subspace
            return self.merge_dependent(u, &lu);
        }
        self.merge_dependent(u, &lu)
    }

    fn merge_dependent(&mut self, u: AlgebraicNumber, lu: &[f64]) -> bool {
        let logs = self.logs();
        let m = self.basis.len();
        // least-squares coordinates via normal equations on the basis span
        let g: Vec<Vec<f64>> =
            (0..m).map(|i| (0..m).map(|j| logs[i].iter().zip(&logs[j]).map(|(a, b)| a * b).sum()).collect()).collect();
        let rhs: Vec<f64> = (0..m).map(|i| logs[i].iter().zip(lu).map(|(a, b)| a * b).sum()).collect();
        let Some(c) = solve_left(&g, &rhs) else { return false };
        for k in 1..=2000i64 {
            let kc: Vec<f64> = c.iter().map(|x| x * k as f64).collect();
            if kc.iter().all(|x| (x - x.round()).abs() < 1e-6 * (1.0 + x.abs()).max(1.0)) {
                if k == 1 {
                    return false;
                }
                let a: Vec<BigInt> = kc.iter().map(|x| BigInt::from(x.round() as i64)).collect();
                let mut rows: Vec<Vec<BigInt>> = (0..m)
                    .map(|i| (0..m).map(|j| if i == j { BigInt::from(k) } else { BigInt::zero() }).collect())
                    .collect();
                rows.push(a);
                let (h, t) = hnf(&IntegerMatrix::new(rows, m));
                let mut gens = self.basis.clone();
                gens.push(u);
                let mut new_basis = Vec::with_capacity(m);
                for (hr, tr) in h.rows().iter().zip(t.rows()) {
                    if hr.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let e: Vec<i64> = tr.iter().map(|x| x.to_i64().expect("small transform")).collect();
                    new_basis.push(unit_product(&self.field, &gens, &e));
                }
                self.basis = new_basis;
                self.reduce();
                return true;
            }
        }
        false
    }

    /// LLL in log space, then canonical choice within {±u, ±1/u}.
    pub fn reduce(&mut self) {
        let logs = self.logs();
        let t = lll_rows(&logs);
        let field = self.field.clone();
        let mut nb: Vec<AlgebraicNumber> = t.iter().map(|e| unit_product(&field, &self.basis, e)).collect();
        for u in nb.iter_mut() {
            *u = canonical_unit(u);
        }
        nb.sort_by(|a, b| {
            let ta = t2_f64(a);
            let tb = t2_f64(b);
            ta.total_cmp(&tb).then_with(|| b.coords().cmp(a.coords()))
        });
        self.basis = nb;
    }

    pub fn regulator(&self) -> f64 {
        regulator(&self.field, &self.basis)
    }
}

pub(crate) fn t2_f64(u: &AlgebraicNumber) -> f64 {
    let (r1, _) = u.field().signature();
    u.embeddings().iter().enumerate().map(|(k, z)| if k < r1 { z.norm_sqr() } else { 2.0 * z.norm_sqr() }).sum()
}

/// Among u, -u, 1/u, -1/u: the smallest T2, then the lexicographically
/// greatest coordinate vector.
pub(crate) fn canonical_unit(u: &AlgebraicNumber) -> AlgebraicNumber {
    let inv = u.inverse().expect("unit");
    let cands = [u.clone(), -u, inv.clone(), -&inv];
    cands
        .into_iter()
        .min_by(|a, b| {
            let (ta, tb) = (t2_f64(a), t2_f64(b));
            if (ta - tb).abs() > 1e-9 * ta.max(1.0) {
                ta.total_cmp(&tb)
            } else {
                b.coords().cmp(a.coords())
            }
        })
        .unwrap()
}

/// An l-th root of an integral element in the field, if one exists.
pub(crate) fn nth_root(u: &AlgebraicNumber, l: u64) -> Option<AlgebraicNumber> {
    let field = u.field();
    let (r1, r2) = field.signature();
    let ic = u.int_coords()?;
    let vals = field.embed_int(&ic);
    let lf = l as f64;
    // choices per embedding
    let mut choices: Vec<Vec<Complex64>> = Vec::with_capacity(r1 + r2);
    for (k, z) in vals.iter().enumerate() {
        if k < r1 {
            let x = z.re;
            if l % 2 == 1 {
                choices.push(vec![Complex64::new(x.signum() * x.abs().powf(1.0 / lf), 0.0)]);
            } else if x > 0.0 {
                let r = x.powf(1.0 / lf);
                choices.push(vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)]);
            } else {
                return None;
            }
        } else {
            let base = z.powf(1.0 / lf);
            choices.push(
                (0..l)
                    .map(|j| base * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / lf))
                    .collect(),
            );
        }
    }
    let total: usize = choices.iter().map(|c| c.len()).product();
    if total > 2_000_000 {
        return None;
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let vals: Vec<Complex64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(c) = field.element_from_embeddings(&vals) {
            let v = AlgebraicNumber::from_int_coords(field, &c);
            if v.pow(l) == *u {
                return Some(v);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

// Degree-one primes (q, root) with q ≡ 1 mod l, q not dividing the index,
// and the images of the integral basis in F_q.
struct CharacterPrimes {
    field: Field,
    l: u64,
    next_q: u64,
}

impl CharacterPrimes {
    fn next(&mut self) -> Option<(u64, Vec<u64>)> {
        let f = self.field.poly().clone();
        loop {
            self.next_q += self.l;
            let q = self.next_q;
            if q > 50_000_000 {
                return None;
            }
            if !is_prime_u64(q) {
                continue;
            }
            let bq = BigInt::from(q);
            if self.field.index().is_multiple_of(&bq) || self.field.poly_disc().is_multiple_of(&bq) {
                continue;
            }
            let facs = factor_mod_p(&f, q).ok()?;
            if let Some((g, _)) = facs.iter().find(|(g, _)| g.deg() == 1) {
                // root = -g0 for monic g = x + g0
                let root = (q - g.coeff(0)) % q;
                let imgs = (0..self.field.degree()).map(|i| eval_rat_mod(self.field.basis_poly(i), root, q)).collect();
                return Some((q, imgs));
            }
        }
    }
}

fn eval_rat_mod(p: &crate::exactmath::poly::RatPoly, x: u64, q: u64) -> u64 {
    let bq = BigInt::from(q);
    let mut acc = BigInt::zero();
    for c in p.coeffs().iter().rev() {
        let num = c.numer().mod_floor(&bq);
        let den = c.denom().mod_floor(&bq);
        let inv = den.modpow(&(&bq - 2), &bq);
        acc = (acc * x + num * inv).mod_floor(&bq);
    }
    acc.to_u64().unwrap()
}

fn image_mod(c: &[BigInt], imgs: &[u64], q: u64) -> u64 {
    let bq = BigInt::from(q);
    let s: BigInt = c.iter().zip(imgs).map(|(a, &b)| a * b).sum();
    s.mod_floor(&bq).to_u64().unwrap()
}

fn powmod(a: u64, e: u64, m: u64) -> u64 {
    crate::exactmath::matrix::powmod(a, e, m)
}

/// Enlarges `basis` (with torsion generator of order w) until it is
/// l-saturated; returns whether anything changed.
pub(crate) fn saturate_at(
    field: &Field,
    basis: &mut [AlgebraicNumber],
    w: u64,
    zeta: &AlgebraicNumber,
    l: u64,
) -> Result<bool> {
    let mut changed = false;
    loop {
        let mut gens: Vec<AlgebraicNumber> = basis.to_vec();
        let with_torsion = w % l == 0;
        if with_torsion {
            gens.push(zeta.clone());
        }
        let coords: Vec<Vec<BigInt>> = gens.iter().map(|g| g.int_coords().expect("integral unit")).collect();
        let mut cp = CharacterPrimes { field: field.clone(), l, next_q: 1 };
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut found = None;
        'outer: for round in 0..6 {
            let target = gens.len() + 10 * (round + 1);
            while rows.len() < target {
                let Some((q, imgs)) = cp.next() else { break };
                // generator of the l-th roots of unity in F_q
                let mut t = 2u64;
                let zl = loop {
                    let z = powmod(t, (q - 1) / l, q);
                    if z != 1 {
                        break z;
                    }
                    t += 1;
                };
                let mut table = std::collections::HashMap::new();
                let mut acc = 1u64;
                for j in 0..l {
                    table.insert(acc, j);
                    acc = (acc as u128 * zl as u128 % q as u128) as u64;
                }
                let row: Option<Vec<u64>> = coords
                    .iter()
                    .map(|c| {
                        let a = image_mod(c, &imgs, q);
                        if a == 0 {
                            return None;
                        }
                        table.get(&powmod(a, (q - 1) / l, q)).copied()
                    })
                    .collect();
                if let Some(r) = row {
                    rows.push(r);
                }
            }
            let ker = nullspace_mod_p(&rows, gens.len(), l);
            if ker.is_empty() {
                break 'outer;
            }
            for a in &ker {
                let m = basis.len();
                let Some(j) = (0..m).find(|&j| a[j] % l != 0) else { continue };
                let inv = crate::exactmath::matrix::invmod(a[j] % l, l);
                let e: Vec<i64> = a.iter().map(|&x| ((x as u128 * inv as u128) % l as u128) as i64).collect();
                let u = unit_product(field, &gens, &e);
                if let Some(v) = nth_root(&u, l) {
                    found = Some((j, v));
                    break 'outer;
                }
            }
            if round == 5 {
                return Err(Error::Inconclusive(format!("unit saturation at {l} did not settle")));
            }
        }
        match found {
            Some((j, v)) => {
                basis[j] = v;
                changed = true;
            }
            None => return Ok(changed),
        }
    }
}

/// Largest index bound handled by saturation.
const MAX_SATURATION_BOUND: u64 = 100_000;

/// Saturates at every prime up to the index bound regulator / lower bound.
pub(crate) fn saturate(field: &Field, lat: &mut UnitLattice, w: u64, zeta: &AlgebraicNumber) -> Result<()> {
    if lat.rank == 0 {
        return Ok(());
    }
    let mut bound = (lat.regulator() / REGULATOR_LOWER_BOUND).floor() as u64;
    let mut l_done = 1u64;
    loop {
        if bound > MAX_SATURATION_BOUND {
            return Err(Error::Inconclusive(format!("unit index bound {bound} too large to saturate")));
        }
        let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&l| l > l_done).collect();
        let Some(&l) = primes.first() else { break };
        let mut b = lat.basis.clone();
        if saturate_at(field, &mut b, w, zeta, l)? {
            lat.basis = b;
            lat.reduce();
            bound = (lat.regulator() / REGULATOR_LOWER_BOUND).floor() as u64;
        }
        l_done = l;
    }
    Ok(())
}

/// Signs of -1 and the units at the real embeddings, as F_2 rows.
pub(crate) fn sign_matrix(units: &[AlgebraicNumber], field: &Field) -> Vec<Vec<u8>> {
    let mut rows = vec![vec![1u8; field.signature().0]];
    for u in units {
        rows.push(u.real_signs().iter().map(|s| u8::from(s.is_lt())).collect());
    }
    rows
}

pub(crate) fn rank_f2(rows: &[Vec<u8>]) -> usize {
    let m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| u64::from(x)).collect()).collect();
    crate::exactmath::matrix::rank_mod_p(&m, 2)
}
