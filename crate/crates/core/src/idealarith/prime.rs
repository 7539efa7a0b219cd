//! Splitting of rational primes and prime-ideal valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ideal::IntegralIdeal;
use crate::error::{Error, Result};
use crate::exactmath::intfactor::is_prime_u64;
use crate::exactmath::matrix::{echelon_mod_p, hnf_mod, nullspace_mod_p, rank_mod_p};
use crate::exactmath::modp::factor_mod_p;
use crate::numfield::{radical_mod_p, reduce_u64, AlgebraicNumber, Field, ModTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdealFactor {
    ideal: IntegralIdeal,
    p: u64,
    e: u32,
    f: u32,
    generator: Vec<BigInt>,
    // beta with beta * P ⊆ pO, beta ∉ pO
    anti: Vec<BigInt>,
}

impl PrimeIdealFactor {
    pub fn ideal(&self) -> &IntegralIdeal {
        &self.ideal
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn field(&self) -> &Field {
        self.ideal.field()
    }

    /// Second generator: the ideal is (p, generator).
    pub fn generator(&self) -> &[BigInt] {
        &self.generator
    }

    pub fn two_element_gens(&self) -> (BigInt, AlgebraicNumber) {
        (BigInt::from(self.p), AlgebraicNumber::from_int_coords(self.field(), &self.generator))
    }

    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f)
    }

    /// Valuation of a nonzero integral element given by coordinates.
    pub fn valuation_int(&self, a: &[BigInt]) -> Result<u64> {
        if a.iter().all(Zero::is_zero) {
            return Err(Error::domain("valuation of zero"));
        }
        let field = self.field();
        let p = BigInt::from(self.p);
        let mut x = a.to_vec();
        let mut v = 0u64;
        // strip rational factors of p first: v_P(p) = e
        loop {
            if x.iter().all(|c| c.is_multiple_of(&p)) {
                x.iter_mut().for_each(|c| *c /= &p);
                v += u64::from(self.e);
            } else {
                break;
            }
        }
        loop {
            let y = field.mul_int(&x, &self.anti);
            if y.iter().all(|c| c.is_multiple_of(&p)) {
                x = y.into_iter().map(|c| c / &p).collect();
                v += 1;
            } else {
                return Ok(v);
            }
        }
    }

    /// Valuation of a nonzero element (may be non-integral).
    pub fn valuation(&self, a: &AlgebraicNumber) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::domain("valuation of zero"));
        }
        let d = a.denominator();
        let num: Vec<BigInt> =
            a.coords().iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect();
        let vn = self.valuation_int(&num)? as i64;
        let vd = self.valuation_rational_int(&d) as i64;
        Ok(vn - vd)
    }

    fn valuation_rational_int(&self, m: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut m = m.clone();
        let mut k = 0u64;
        while !m.is_zero() && m.is_multiple_of(&p) {
            m /= &p;
            k += 1;
        }
        k * u64::from(self.e)
    }

    /// Valuation of a nonzero integral ideal.
    pub fn valuation_ideal(&self, i: &IntegralIdeal) -> u64 {
        i.basis().iter().filter(|b| b.iter().any(|x| !x.is_zero())).map(|b| self.valuation_int(b).unwrap()).min().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct SplittingData {
    pub q: u64,
    pub factors: Vec<PrimeIdealFactor>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub v: Vec<usize>,
}

impl SplittingData {
    pub fn t_nonempty(&self) -> bool {
        !self.t.is_empty()
    }

    pub fn v_nonempty(&self) -> bool {
        !self.v.is_empty()
    }

    /// (e, f) pairs in factor order.
    pub fn ef(&self) -> Vec<(u32, u32)> {
        self.factors.iter().map(|p| (p.e, p.f)).collect()
    }

    pub fn product(&self) -> IntegralIdeal {
        let field = self.factors[0].field().clone();
        self.factors.iter().fold(IntegralIdeal::unit_ideal(&field), |acc, p| acc.mul(&p.ideal.pow(p.e)))
    }
}

/// S_q, T_q, V_q as lists of prime factors.
pub fn stv_sets(k: &Field, q: u64) -> Result<(Vec<PrimeIdealFactor>, Vec<PrimeIdealFactor>, Vec<PrimeIdealFactor>)> {
    let sd = factor_rational_prime(k, q)?;
    let pick = |ix: &[usize]| ix.iter().map(|&i| sd.factors[i].clone()).collect();
    Ok((pick(&sd.s), pick(&sd.t), pick(&sd.v)))
}

fn anti_uniformizer(field: &Field, ideal: &IntegralIdeal, p: u64) -> Vec<BigInt> {
    // beta with beta * pi ≡ 0 mod p for every basis vector pi of the ideal
    let n = field.degree();
    let table = ModTable::new(field.mult_table(), p);
    let basis_p: Vec<Vec<u64>> =
        ideal.basis().iter().map(|r| r.iter().map(|x| reduce_u64(x, p)).collect()).collect();
    // matrix rows: for each unknown coordinate i of beta, concatenated e_i * pi_k
    let mut m: Vec<Vec<u64>> = vec![Vec::with_capacity(n * n); n];
    for (i, row) in m.iter_mut().enumerate() {
        let mut e = vec![0u64; n];
        e[i] = 1;
        for pi in &basis_p {
            row.extend(table.mul(&e, pi));
        }
    }
    // beta * M = 0  ->  transpose to solve M^T beta^T = 0
    let mt: Vec<Vec<u64>> = (0..n * n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    let ker = nullspace_mod_p(&mt, n, p);
    let v = ker.into_iter().find(|v| v.iter().any(|&x| x != 0)).expect("P^{-1} strictly contains O");
    v.into_iter().map(BigInt::from).collect()
}

fn make_factor(field: &Field, ideal: IntegralIdeal, p: u64, e: Option<u32>, generator: Option<Vec<BigInt>>) -> PrimeIdealFactor {
    let n = field.degree();
    let f = {
        let mut k = 0u32;
        let mut nm = ideal.norm().clone();
        let bp = BigInt::from(p);
        while nm.is_multiple_of(&bp) && !nm.is_zero() && nm != BigInt::one() {
            nm /= &bp;
            k += 1;
        }
        debug_assert!(nm.is_one());
        k
    };
    let anti = anti_uniformizer(field, &ideal, p);
    let mut pf = PrimeIdealFactor { ideal, p, e: 1, f, generator: Vec::new(), anti };
    let mut pv = vec![BigInt::zero(); n];
    pv[0] = BigInt::from(p);
    pf.e = match e {
        Some(e) => e,
        None => {
            // v_P(p) computed without the rational shortcut
            let mut x = pv.clone();
            let mut v = 0u32;
            let bp = BigInt::from(p);
            loop {
                let y = field.mul_int(&x, &pf.anti);
                if y.iter().all(|c| c.is_multiple_of(&bp)) {
                    x = y.into_iter().map(|c| c / &bp).collect();
                    v += 1;
                } else {
                    break;
                }
            }
            v
        }
    };
    pf.generator = match generator {
        Some(g) => g,
        None => find_generator(&pf),
    };
    pf
}

fn find_generator(pf: &PrimeIdealFactor) -> Vec<BigInt> {
    let field = pf.field();
    let p = BigInt::from(pf.p);
    let n = field.degree();
    if n == 1 {
        return vec![p];
    }
    let ok = |a: &Vec<BigInt>| IntegralIdeal::from_generators_with(field, &[a.clone()], &p) == pf.ideal;
    // HNF-box order: combinations of basis vectors with small coefficients
    let basis = pf.ideal.basis();
    for b in basis {
        if ok(b) {
            return b.clone();
        }
    }
    let (_, g) = pf.ideal.two_element();
    g
}

/// Complete factorization of q O_K, sorted by (f, e, generator).
pub fn factor_rational_prime(k: &Field, q: u64) -> Result<SplittingData> {
    if !is_prime_u64(q) {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    let n = k.degree();
    let mut factors = Vec::new();
    let bq = BigInt::from(q);
    if !k.index().is_multiple_of(&bq) {
        for (g, e) in factor_mod_p(k.poly(), q)? {
            let gz = g.to_bigint_poly_nonneg();
            let elt = AlgebraicNumber::from_int_poly(k, &gz);
            let c = elt.int_coords().expect("equation order element is integral");
            let ideal = IntegralIdeal::from_generators_with(k, &[c.clone()], &bq);
            let gen = if n == 1 { vec![bq.clone()] } else { c.clone() };
            factors.push(make_factor(k, ideal, q, Some(e), Some(gen)));
        }
    } else {
        let rad = radical_mod_p(k.mult_table(), &k.one_coords(), q);
        let rows: Vec<Vec<u64>> = rad.rows().iter().map(|r| r.iter().map(|x| reduce_u64(x, q)).collect()).collect();
        for w in split_semisimple(k, rows, q) {
            let gens: Vec<Vec<BigInt>> = w.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let ideal = IntegralIdeal::from_hnf(k, hnf_mod(&gens, n, &bq));
            factors.push(make_factor(k, ideal, q, None, None));
        }
    }
    factors.sort_by(|a, b| (a.f, a.e, &a.generator).cmp(&(b.f, b.e, &b.generator)));
    let s: Vec<usize> = (0..factors.len()).collect();
    let t = s.iter().copied().filter(|&i| factors[i].f == 1).collect();
    let v = s.iter().copied().filter(|&i| factors[i].e % 2 == 1).collect();
    let sum: u32 = factors.iter().map(|p| p.e * p.f).sum();
    if sum as usize != n {
        return Err(Error::domain(format!("splitting of {q} inconsistent: sum e*f = {sum}")));
    }
    Ok(SplittingData { q, factors, s, t, v })
}

// F_p-subspace W of F_p^n (rows, containing the image of the ideal) in
// reduced echelon form, with helpers for the quotient algebra O/W.
struct Quotient<'a> {
    table: &'a ModTable,
    w: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    n: usize,
}

impl<'a> Quotient<'a> {
    fn new(table: &'a ModTable, mut w: Vec<Vec<u64>>, n: usize) -> Self {
        let p = table.p;
        let pivots = echelon_mod_p(&mut w, p);
        w.truncate(pivots.len());
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Quotient { table, w, pivots, free, n }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.table.p;
        let mut v = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = v[c] % p;
            if f == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(&self.w[r]) {
                *x = (*x + p - (f as u128 * *y as u128 % p as u128) as u64) % p;
            }
        }
        self.free.iter().map(|&c| v[c]).collect()
    }

    fn lift(&self, q: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for (x, &c) in q.iter().zip(&self.free) {
            v[c] = *x;
        }
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.reduce(&self.table.mul(&self.lift(a), &self.lift(b)))
    }

    fn pow(&self, a: &[u64], e: u64) -> Vec<u64> {
        let mut acc = self.reduce(&one_vec(self.n));
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    // matrix of multiplication by a on the quotient basis
    fn mul_matrix(&self, a: &[u64]) -> Vec<Vec<u64>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut e = vec![0u64; d];
                e[i] = 1;
                self.mul(&e, a)
            })
            .collect()
    }
}

fn one_vec(n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[0] = 1;
    v
}

/// Splits the radical of qO (given mod q) into the maximal ideals above q,
/// each returned as a spanning set of its image in O/qO.
fn split_semisimple(k: &Field, rad: Vec<Vec<u64>>, q: u64) -> Vec<Vec<Vec<u64>>> {
    let n = k.degree();
    let table = ModTable::new(k.mult_table(), q);
    let mut out = Vec::new();
    let mut stack = vec![rad];
    while let Some(w) = stack.pop() {
        let quo = Quotient::new(&table, w.clone(), n);
        let d = quo.dim();
        // Frobenius-fixed subalgebra: kernel of x -> x^q - x
        let fm: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                let mut e = vec![0u64; d];
                e[i] = 1;
                let fx = quo.pow(&e, q);
                fx.iter().zip(&e).map(|(a, b)| (a + q - b) % q).collect()
            })
            .collect();
        let mt: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| fm[i][j]).collect()).collect();
        let ker = nullspace_mod_p(&mt, d, q);
        if ker.len() <= 1 {
            out.push(quo.w.clone());
            continue;
        }
        let one = quo.reduce(&one_vec(n));
        // an element of the fixed algebra outside F_q * 1
        let a = ker
            .iter()
            .find(|v| rank_mod_p(&[one.clone(), (*v).clone()], q) == 2)
            .expect("fixed algebra larger than F_q")
            .clone();
        for c in 0..q {
            let ac: Vec<u64> = a.iter().zip(&one).map(|(x, o)| (x + q - (c as u128 * *o as u128 % q as u128) as u64) % q).collect();
            let m = quo.mul_matrix(&ac);
            if rank_mod_p(&m, q) == d {
                continue;
            }
            // W + (a - c) O
            let mut nw = w.clone();
            let lifted = quo.lift(&ac);
            for i in 0..n {
                let mut e = vec![0u64; n];
                e[i] = 1;
                nw.push(table.mul(&e, &lifted));
            }
            stack.push(nw);
        }
    }
    out
}

/// Valuation of a nonzero integral ideal at a prime.
pub fn valuation(i: &IntegralIdeal, p: &PrimeIdealFactor) -> u64 {
    p.valuation_ideal(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::BigIntPoly;
    use crate::numfield::build_field;

    fn field(c: &[i64]) -> Field {
        build_field(&BigIntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn table_examples() {
        let k = field(&[-1, -3, 0, 1]);
        let s = factor_rational_prime(&k, 3).unwrap();
        assert_eq!(s.ef(), vec![(3, 1)]);
        let s2 = factor_rational_prime(&k, 2).unwrap();
        assert_eq!(s2.ef(), vec![(1, 3)]);
        let k2 = field(&[1, -4, -1, 1]);
        let s = factor_rational_prime(&k2, 3).unwrap();
        assert_eq!(s.ef(), vec![(1, 1), (2, 1)]);
        assert_eq!(s.product(), IntegralIdeal::from_integer(&k2, &BigInt::from(3)).unwrap());
    }

    #[test]
    fn index_divisor() {
        // 2 divides the index; it splits completely
        let k = field(&[-8, -2, -1, 1]);
        let s = factor_rational_prime(&k, 2).unwrap();
        assert_eq!(s.ef(), vec![(1, 1), (1, 1), (1, 1)]);
        assert_eq!(s.product(), IntegralIdeal::from_integer(&k, &BigInt::from(2)).unwrap());
        for p in &s.factors {
            assert_eq!(p.norm(), BigInt::from(2));
            let two = IntegralIdeal::from_integer(&k, &BigInt::from(2)).unwrap();
            assert_eq!(p.valuation_ideal(&two), 1);
        }
    }

    #[test]
    fn valuations() {
        let k = field(&[-1, -3, 0, 1]);
        let s = factor_rational_prime(&k, 3).unwrap();
        let p = &s.factors[0];
        let three = AlgebraicNumber::from_i64(&k, 3);
        assert_eq!(p.valuation(&three).unwrap(), 3);
        assert_eq!(p.valuation(&AlgebraicNumber::one(&k)).unwrap(), 0);
        assert_eq!(p.valuation_ideal(&p.ideal().mul(p.ideal())), 2);
        assert!(p.valuation(&AlgebraicNumber::zero(&k)).is_err());
        let inv = three.inverse().unwrap();
        assert_eq!(p.valuation(&inv).unwrap(), -3);
    }
}
