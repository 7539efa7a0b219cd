//! Integral ideals of the maximal order, stored as square HNF matrices over
//! the integral basis.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::matrix::{hnf_mod, IntegerMatrix};
use crate::numfield::{AlgebraicNumber, Field};

#[derive(Clone)]
pub struct IntegralIdeal {
    field: Field,
    hnf: IntegerMatrix,
    norm: BigInt,
}

impl PartialEq for IntegralIdeal {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) && self.hnf == other.hnf
    }
}

impl Eq for IntegralIdeal {}

impl fmt::Debug for IntegralIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(N={}, {:?})", self.norm, self.hnf.rows())
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

impl IntegralIdeal {
    pub(crate) fn from_hnf(field: &Field, hnf: IntegerMatrix) -> Self {
        let norm = (0..hnf.nrows()).fold(BigInt::one(), |acc, i| acc * hnf.get(i, i));
        IntegralIdeal { field: field.clone(), hnf, norm }
    }

    /// Ideal generated by `gens` (integral coordinates) and the integer `d`,
    /// which must lie in the ideal.
    pub fn from_generators_with(field: &Field, gens: &[Vec<BigInt>], d: &BigInt) -> Self {
        let n = field.degree();
        let d = d.abs();
        assert!(!d.is_zero());
        let mut all = Vec::with_capacity(gens.len() * n);
        for g in gens {
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            for i in 0..n {
                all.push(field.mul_int(g, &unit(n, i)));
            }
        }
        Self::from_hnf(field, hnf_mod(&all, n, &d))
    }

    pub fn from_generators(field: &Field, gens: &[Vec<BigInt>]) -> Result<Self> {
        let d = gens
            .iter()
            .map(|g| field.norm_int(g).abs())
            .filter(|x| !x.is_zero())
            .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
        if d.is_zero() {
            return Err(Error::domain("zero ideal"));
        }
        Ok(Self::from_generators_with(field, gens, &d))
    }

    pub fn principal_int(field: &Field, a: &[BigInt]) -> Result<Self> {
        Self::from_generators(field, &[a.to_vec()])
    }

    pub fn principal(a: &AlgebraicNumber) -> Result<Self> {
        let c = a.int_coords().ok_or_else(|| Error::domain("element is not integral"))?;
        Self::principal_int(a.field(), &c)
    }

    pub fn from_integer(field: &Field, m: &BigInt) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::domain("zero ideal"));
        }
        let n = field.degree();
        Ok(Self::from_hnf(field, hnf_mod(&[], n, &m.abs())))
    }

    pub fn unit_ideal(field: &Field) -> Self {
        Self::from_integer(field, &BigInt::one()).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn hnf(&self) -> &IntegerMatrix {
        &self.hnf
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        self.hnf.rows()
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn is_one(&self) -> bool {
        self.norm.is_one()
    }

    /// Smallest positive integer in the ideal.
    pub fn min_integer(&self) -> BigInt {
        // solve (c, 0, ..., 0) = x H with x rational for c = 1
        let h = self.hnf.rows();
        let n = h.len();
        let mut x = vec![BigRational::zero(); n];
        x[0] = BigRational::new(BigInt::one(), h[0][0].clone());
        for c in 1..n {
            let s: BigRational = (0..c).map(|i| &x[i] * BigRational::from_integer(h[i][c].clone())).sum();
            x[c] = -s / BigRational::from_integer(h[c][c].clone());
        }
        x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Coordinates of `v` over the HNF basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let h = self.hnf.rows();
        let n = h.len();
        let mut r = v.to_vec();
        let mut x = vec![BigInt::zero(); n];
        for c in 0..n {
            let (q, rem) = r[c].div_rem(&h[c][c]);
            if !rem.is_zero() {
                return None;
            }
            for j in c..n {
                let d = &q * &h[c][j];
                r[j] -= d;
            }
            x[c] = q;
        }
        Some(x)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    pub fn contains_element(&self, a: &AlgebraicNumber) -> bool {
        a.int_coords().is_some_and(|c| self.contains(&c))
    }

    pub fn contains_ideal(&self, other: &IntegralIdeal) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    pub fn mul(&self, other: &IntegralIdeal) -> IntegralIdeal {
        let n = self.field.degree();
        let mut gens = Vec::with_capacity(n * n);
        for a in self.basis() {
            for b in other.basis() {
                gens.push(self.field.mul_int(a, b));
            }
        }
        let d = self.min_integer() * other.min_integer();
        Self::from_hnf(&self.field, hnf_mod(&gens, n, &d))
    }

    pub fn pow(&self, e: u32) -> IntegralIdeal {
        let mut acc = Self::unit_ideal(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add(&self, other: &IntegralIdeal) -> IntegralIdeal {
        let n = self.field.degree();
        let d = self.min_integer().gcd(&other.min_integer());
        let gens: Vec<Vec<BigInt>> = self.basis().iter().chain(other.basis()).cloned().collect();
        Self::from_hnf(&self.field, hnf_mod(&gens, n, &d))
    }

    /// `I * (a)` for an integral element a.
    pub fn mul_element(&self, a: &[BigInt]) -> Result<IntegralIdeal> {
        let p = Self::principal_int(&self.field, a)?;
        Ok(self.mul(&p))
    }

    /// Exact quotient `self / other` when `other` divides `self`.
    pub fn div_exact(&self, other: &IntegralIdeal) -> Option<IntegralIdeal> {
        // (I : J) = I J^{-1} whenever J divides I
        let q = self.colon(other);
        (q.mul(other) == *self).then_some(q)
    }

    /// `(I : J) = {x in O : x J ⊆ I}`.
    pub fn colon(&self, other: &IntegralIdeal) -> IntegralIdeal {
        let n = self.field.degree();
        // x J ⊆ I iff (x b) H^{-1} is integral for every basis vector b of J
        let m = self.min_integer();
        let h = self.hnf.rows();
        let hinv = crate::exactmath::matrix::rat_inverse(&crate::exactmath::matrix::int_to_rat_matrix(h))
            .expect("nonsingular");
        let den = hinv.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut big: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n * other.basis().len());
            for b in other.basis() {
                let v = self.field.mul_int(&unit(n, i), b);
                for c in 0..n {
                    let s: BigRational = v
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(l, x)| BigRational::from_integer(x.clone()) * &hinv[l][c])
                        .sum();
                    row.push((s * BigRational::from_integer(den.clone())).to_integer());
                }
            }
            big.push(row);
        }
        let mut gens = int_kernel_mod(&big, &den);
        for i in 0..n {
            let mut v = unit(n, i);
            v[i] = m.clone();
            gens.push(v);
        }
        Self::from_hnf(&self.field, hnf_mod(&gens, n, &m))
    }

    /// Two generators: the minimal integer and one more element.
    pub fn two_element(&self) -> (BigInt, Vec<BigInt>) {
        let m = self.min_integer();
        let n = self.field.degree();
        let basis = self.basis();
        let try_gen = |a: &Vec<BigInt>| -> bool {
            Self::from_generators_with(&self.field, &[a.clone()], &m) == *self
        };
        for b in basis {
            if try_gen(b) {
                return (m, b.clone());
            }
        }
        // small combinations of basis vectors in a fixed order
        for bound in 1i64..=4 {
            let mut coeffs = vec![-bound; n];
            loop {
                if coeffs.iter().any(|c| c.abs() == bound) {
                    let mut v = vec![BigInt::zero(); n];
                    for (c, b) in coeffs.iter().zip(basis) {
                        for (vk, bk) in v.iter_mut().zip(b) {
                            *vk += bk * *c;
                        }
                    }
                    if try_gen(&v) {
                        return (m, v);
                    }
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] > bound {
                        coeffs[i] = -bound;
                        i += 1;
                    } else {
                        break;
                    }
                }
                if i == n {
                    break;
                }
            }
        }
        // fallback: sum of basis vectors weighted by powers of k
        let mut k = BigInt::one();
        loop {
            let mut v = vec![BigInt::zero(); n];
            let mut w = BigInt::one();
            for b in basis {
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk += bk * &w;
                }
                w *= &k;
            }
            if try_gen(&v) {
                return (m, v);
            }
            k += 1;
        }
    }
}

/// HNF-style generators of `{x in Z^n : x * M ≡ 0 (mod d)}` for an n×k matrix M.
fn int_kernel_mod(m: &[Vec<BigInt>], d: &BigInt) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let k = m.first().map_or(0, |r| r.len());
    // Stack [M | I] and d*[I_k | 0] then HNF; rows whose first k entries vanish
    // give the kernel.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + k);
    for (i, r) in m.iter().enumerate() {
        let mut row: Vec<BigInt> = r.iter().map(|x| x.mod_floor(d)).collect();
        row.extend(unit(n, i));
        rows.push(row);
    }
    for j in 0..k {
        let mut row = vec![BigInt::zero(); k + n];
        row[j] = d.clone();
        rows.push(row);
    }
    let (h, _) = crate::exactmath::matrix::hnf(&IntegerMatrix::new(rows, k + n));
    h.rows()
        .iter()
        .filter(|r| r[..k].iter().all(Zero::is_zero) && r[k..].iter().any(|x| !x.is_zero()))
        .map(|r| r[k..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::BigIntPoly;
    use crate::numfield::build_field;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn basic_ops() {
        let k = build_field(&BigIntPoly::from_i64(&[5, 0, 1])).unwrap();
        let two = IntegralIdeal::from_integer(&k, &BigInt::from(2)).unwrap();
        assert_eq!(two.norm(), &BigInt::from(4));
        // (2, 1 + sqrt(-5)) squared is (2)
        let p = IntegralIdeal::from_generators(&k, &[v(&[2, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(p.norm(), &BigInt::from(2));
        assert_eq!(p.mul(&p), two);
        assert_eq!(two.div_exact(&p), Some(p.clone()));
        assert_eq!(p.min_integer(), BigInt::from(2));
        let (m, a) = p.two_element();
        assert_eq!(IntegralIdeal::from_generators_with(&k, &[a], &m), p);
        let three = IntegralIdeal::from_integer(&k, &BigInt::from(3)).unwrap();
        assert!(p.add(&three).is_one());
        assert_eq!(p.colon(&p), IntegralIdeal::unit_ideal(&k));
    }
}
