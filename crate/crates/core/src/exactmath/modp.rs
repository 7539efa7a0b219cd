//! Dense polynomials over F_p (p < 2^32) and their factorization:
//! squarefree decomposition, distinct-degree, then equal-degree splitting.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::intfactor::is_prime_u64;
use super::matrix::{invmod, mulmod};
use super::poly::BigIntPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_poly(f: &BigIntPoly, p: u64) -> Self {
        FpPoly::new(p, f.reduce_mod(p))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|&x| mulmod(x, s, self.p)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        FpPoly::new(p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = invmod(d.leading(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mulmod(r[k + dd], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(coef, dj, p)) % p;
            }
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % p, p)).collect())
    }

    pub fn mulmod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m` with a big exponent.
    pub fn powmod_big(&self, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod(&self, e: u64, m: &FpPoly) -> FpPoly {
        self.powmod_big(&BigInt::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mulmod(acc, x, self.p) + a) % self.p)
    }

    /// Centered lift to an integer polynomial.
    pub fn to_bigint_poly(&self) -> BigIntPoly {
        let half = self.p / 2;
        BigIntPoly::new(
            self.c
                .iter()
                .map(|&a| if a > half { BigInt::from(a) - BigInt::from(self.p) } else { BigInt::from(a) })
                .collect(),
        )
    }

    /// Lift with coefficients in [0, p).
    pub fn to_bigint_poly_nonneg(&self) -> BigIntPoly {
        BigIntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    // f(x) = g(x^p) with coefficients in F_p: the p-th root is g itself.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bigint_poly_nonneg())
    }
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let fp = f.derivative();
    if fp.is_zero() {
        if f.deg() > 0 {
            for (g, m) in squarefree_decomposition(&f.pth_root()) {
                out.push((g, m * p as u32));
            }
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.monic().div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut g = f.monic();
    let x = FpPoly::x(p);
    let mut h = x.rem(&g);
    let mut d = 1;
    while g.deg() >= 2 * d {
        h = h.powmod(p, &g);
        let gd = g.gcd(&h.sub(&x));
        if gd.deg() > 0 {
            g = g.div_exact(&gd);
            h = h.rem(&g);
            out.push((gd, d));
        }
        d += 1;
    }
    if g.deg() > 0 {
        let dg = g.deg();
        out.push((g, dg));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace F_{2^d} -> F_2
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            a.powmod_big(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial over F_p into monic
/// irreducibles with multiplicities, sorted by (degree, coefficients).
pub fn factor_fp(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero());
    let p = f.p;
    let seed = f.c.iter().fold(p.wrapping_mul(0x9e37_79b9_7f4a_7c15), |h, &c| {
        (h ^ c).wrapping_mul(0x1000_0000_01b3).rotate_left(17)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            let mut pieces = Vec::new();
            equal_degree(&h, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|q| (q, m)));
        }
    }
    out.sort_by(|(a, _), (b, _)| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

/// Factor an integer polynomial modulo a prime `p < 2^32`.
pub fn factor_mod_p(f: &BigIntPoly, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p >= 1 << 32 {
        return Err(Error::cap("modulus bits", 64 - p.leading_zeros() as u64, 32));
    }
    let fp = FpPoly::from_poly(f, p);
    if fp.is_zero() {
        return Err(Error::domain(format!("polynomial vanishes modulo {p}")));
    }
    Ok(factor_fp(&fp))
}

pub fn is_irreducible_fp(f: &FpPoly) -> bool {
    let fs = factor_fp(f);
    fs.len() == 1 && fs[0].1 == 1
}
