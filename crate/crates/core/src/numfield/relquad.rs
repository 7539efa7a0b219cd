//! The relative quadratic extension L = K(sqrt(-d)) as an absolute field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::AlgebraicNumber;
use super::field::{build_field, Field};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{rat_inverse, RatMatrix};
use crate::exactmath::poly::{BigIntPoly, RatPoly};
use crate::exactmath::zfactor::irreducibility_witness;

#[derive(Clone, Debug)]
pub struct RelativeQuadraticData {
    base: Field,
    top: Field,
    d: i64,
    shift: i64,
    /// Rows: images of the base integral basis in top coordinates.
    embedding: Vec<Vec<BigRational>>,
    /// Rows: images of the top integral basis under the nontrivial automorphism.
    conjugation: Vec<Vec<BigInt>>,
    sqrt: AlgebraicNumber,
    // columns of the embedding used to pull elements back into the base
    pull_cols: Vec<usize>,
    pull_inv: RatMatrix,
}

/// f(x - k*s) with s^2 = -d, written as A(x) + s*B(x).
fn split_shift(f: &BigIntPoly, k: i64, d: i64) -> (BigIntPoly, BigIntPoly) {
    let n = f.degree().unwrap();
    // powers of (x - k s) as pairs (A, B)
    let mut pa = BigIntPoly::one();
    let mut pb = BigIntPoly::zero();
    let mut a = BigIntPoly::zero();
    let mut b = BigIntPoly::zero();
    let x = BigIntPoly::x();
    let ks = BigIntPoly::constant(BigInt::from(k));
    let kd = BigIntPoly::constant(BigInt::from(k) * BigInt::from(d));
    for i in 0..=n {
        let c = BigIntPoly::constant(f.coeff(i));
        a = &a + &(&c * &pa);
        b = &b + &(&c * &pb);
        // (pa + s pb)(x - k s) = pa x + k d pb + s (pb x - k pa)
        let na = &(&pa * &x) + &(&kd * &pb);
        let nb = &(&pb * &x) - &(&ks * &pa);
        pa = na;
        pb = nb;
    }
    (a, b)
}

/// Horner evaluation of a rational polynomial at an element.
fn eval_at(p: &RatPoly, x: &AlgebraicNumber) -> AlgebraicNumber {
    let field = x.field();
    let mut acc = AlgebraicNumber::zero(field);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &AlgebraicNumber::from_rational(field, c.clone());
    }
    acc
}

pub fn adjoin_sqrt_minus3(base: &Field) -> Result<RelativeQuadraticData> {
    adjoin_sqrt_neg(base, 3)
}

/// Builds K(sqrt(-d)) for a positive integer d. The generator is
/// theta_K + k*sqrt(-d) for the smallest k >= 1 giving an irreducible
/// minimal polynomial.
pub fn adjoin_sqrt_neg(base: &Field, d: i64) -> Result<RelativeQuadraticData> {
    if d <= 0 {
        return Err(Error::domain("adjoin_sqrt_neg needs d > 0"));
    }
    let f = base.poly();
    let n = base.degree();
    if base.is_totally_real() || n == 1 {
        // -d < 0 is never a square in a real field
    } else if AlgebraicNumber::from_i64(base, -d).is_square()? {
        return Err(Error::domain(format!("-{d} is a square in the base field")));
    }
    let limit = 4 * (n * n) as i64 + 8;
    for k in 1..=limit {
        let (a, b) = split_shift(f, k, d);
        let h = &(&a * &a) + &(&(&b * &b) * &BigIntPoly::constant(BigInt::from(d)));
        if irreducibility_witness(&h).is_err() {
            continue;
        }
        let top = build_field(&h)?;
        return finish(base, top, d, k, &a, &b);
    }
    Err(Error::domain(format!("no primitive element found; -{d} may be a square in the base field")))
}

fn finish(base: &Field, top: Field, d: i64, k: i64, a: &BigIntPoly, b: &BigIntPoly) -> Result<RelativeQuadraticData> {
    let n = base.degree();
    let gamma = AlgebraicNumber::theta(&top);
    let av = eval_at(&a.to_rat(), &gamma);
    let bv = eval_at(&b.to_rat(), &gamma);
    let s = (-&av).div(&bv)?;
    if &s * &s != AlgebraicNumber::from_i64(&top, -d) {
        return Err(Error::domain("square root image failed verification"));
    }
    let ks = s.scale(&BigRational::from_integer(BigInt::from(k)));
    let theta_k = &gamma - &ks;
    let embedding: Vec<Vec<BigRational>> =
        (0..n).map(|i| eval_at(base.basis_poly(i), &theta_k).coords().to_vec()).collect();
    let gamma_bar = &theta_k - &ks;
    let mut conjugation = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let img = eval_at(top.basis_poly(i), &gamma_bar);
        conjugation.push(img.int_coords().ok_or_else(|| Error::domain("conjugation not integral"))?);
    }
    if base.is_totally_real() {
        top.set_cm_conjugation(conjugation.clone());
    }
    // choose n independent columns of the embedding for pulling back
    let mut pull_cols = Vec::new();
    for c in 0..2 * n {
        let mut trial = pull_cols.clone();
        trial.push(c);
        let sub: RatMatrix = embedding.iter().map(|r| trial.iter().map(|&j| r[j].clone()).collect()).collect();
        if crate::exactmath::matrix::rat_rank(&sub) == trial.len() {
            pull_cols = trial;
        }
        if pull_cols.len() == n {
            break;
        }
    }
    let sub: RatMatrix = embedding.iter().map(|r| pull_cols.iter().map(|&j| r[j].clone()).collect()).collect();
    let pull_inv = rat_inverse(&sub).ok_or_else(|| Error::domain("embedding not injective"))?;
    let rel = RelativeQuadraticData { base: base.clone(), top, d, shift: k, embedding, conjugation, sqrt: s, pull_cols, pull_inv };
    rel.self_check()?;
    Ok(rel)
}

impl RelativeQuadraticData {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The k with top generator theta_K + k*sqrt(-d).
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn embedding_matrix(&self) -> &[Vec<BigRational>] {
        &self.embedding
    }

    pub fn conjugation_matrix(&self) -> &[Vec<BigInt>] {
        &self.conjugation
    }

    /// Image of sqrt(-d) in the top field.
    pub fn sqrt_neg(&self) -> &AlgebraicNumber {
        &self.sqrt
    }

    pub fn embed(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let m = 2 * self.base.degree();
        let mut c = vec![BigRational::zero(); m];
        for (i, a) in x.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, ck) in c.iter_mut().enumerate() {
                *ck += a * &self.embedding[i][k];
            }
        }
        AlgebraicNumber::new(&self.top, c)
    }

    pub fn embed_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        let a = AlgebraicNumber::from_int_coords(&self.base, x);
        self.embed(&a).int_coords().expect("integral basis embeds integrally")
    }

    /// Preimage of a top element lying in the embedded base.
    pub fn pull_back(&self, y: &AlgebraicNumber) -> Option<AlgebraicNumber> {
        let v: Vec<BigRational> = self.pull_cols.iter().map(|&j| y.coords()[j].clone()).collect();
        let n = self.base.degree();
        let c: Vec<BigRational> =
            (0..n).map(|k| v.iter().enumerate().map(|(i, vi)| vi * &self.pull_inv[i][k]).sum()).collect();
        let x = AlgebraicNumber::new(&self.base, c);
        (self.embed(&x) == *y).then_some(x)
    }

    /// x + y*sqrt(-d) for base elements x, y.
    pub fn make(&self, x: &AlgebraicNumber, y: &AlgebraicNumber) -> AlgebraicNumber {
        &self.embed(x) + &(&self.embed(y) * &self.sqrt)
    }

    pub fn conjugate(&self, z: &AlgebraicNumber) -> AlgebraicNumber {
        let m = 2 * self.base.degree();
        let mut c = vec![BigRational::zero(); m];
        for (i, a) in z.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, ck) in c.iter_mut().enumerate() {
                if !self.conjugation[i][k].is_zero() {
                    *ck += a * BigRational::from_integer(self.conjugation[i][k].clone());
                }
            }
        }
        AlgebraicNumber::new(&self.top, c)
    }

    pub fn relative_norm(&self, z: &AlgebraicNumber) -> AlgebraicNumber {
        let p = z * &self.conjugate(z);
        self.pull_back(&p).expect("relative norm lies in the base")
    }

    pub fn relative_trace(&self, z: &AlgebraicNumber) -> AlgebraicNumber {
        let p = z + &self.conjugate(z);
        self.pull_back(&p).expect("relative trace lies in the base")
    }

    fn self_check(&self) -> Result<()> {
        let n = self.base.degree();
        let fail = |what: &str| Err(Error::domain(format!("relative quadratic check failed: {what}")));
        // ring homomorphism on basis products
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![BigInt::zero(); n];
                ei[i] = BigInt::one();
                let mut ej = vec![BigInt::zero(); n];
                ej[j] = BigInt::one();
                let prod = AlgebraicNumber::from_int_coords(&self.base, &self.base.mul_int(&ei, &ej));
                let lhs = self.embed(&prod);
                let rhs = &self.embed(&AlgebraicNumber::from_int_coords(&self.base, &ei))
                    * &self.embed(&AlgebraicNumber::from_int_coords(&self.base, &ej));
                if lhs != rhs {
                    return fail("embedding");
                }
            }
        }
        let m = 2 * n;
        for i in 0..m {
            let mut e = vec![BigInt::zero(); m];
            e[i] = BigInt::one();
            let z = AlgebraicNumber::from_int_coords(&self.top, &e);
            if self.conjugate(&self.conjugate(&z)) != z {
                return fail("conjugation is not an involution");
            }
        }
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let x = self.embed(&AlgebraicNumber::from_int_coords(&self.base, &e));
            if self.conjugate(&x) != x {
                return fail("conjugation moves the base");
            }
        }
        if self.conjugate(&self.sqrt) != -&self.sqrt {
            return fail("conjugation fixes the square root");
        }
        // N(x + y s) = x^2 + d y^2 on basis pairs
        let dd = AlgebraicNumber::from_i64(&self.base, self.d);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let x = AlgebraicNumber::from_int_coords(&self.base, &e);
            let y = &x + &AlgebraicNumber::one(&self.base);
            let z = self.make(&x, &y);
            if self.relative_norm(&z) != &(&x * &x) + &(&dd * &(&y * &y)) {
                return fail("relative norm");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> Field {
        build_field(&BigIntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn discriminants() {
        let cases: [(&[i64], i64); 3] = [(&[0, 1], -3), (&[-1, -3, 0, 1], -19683), (&[-2, 0, 1], 576)];
        for (c, disc) in cases {
            let rel = adjoin_sqrt_minus3(&field(c)).unwrap();
            assert_eq!(rel.top().disc(), &BigInt::from(disc), "{c:?}");
            assert_eq!(rel.top().signature(), (0, c.len() - 1));
            assert!(rel.top().cm_conjugation().is_some());
        }
    }

    #[test]
    fn relative_norm_of_one_plus_sqrt() {
        let k = field(&[-1, -3, 0, 1]);
        let rel = adjoin_sqrt_minus3(&k).unwrap();
        let one = AlgebraicNumber::one(&k);
        let z = rel.make(&one, &one);
        assert_eq!(rel.relative_norm(&z), AlgebraicNumber::from_i64(&k, 4));
    }
}
