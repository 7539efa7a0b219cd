//! Recovering integral elements from numerical embeddings; isomorphism and
//! square tests built on it.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::element::AlgebraicNumber;
use super::field::{Field, NumberField};
use crate::error::Result;
use crate::exactmath::poly::BigIntPoly;
use crate::exactmath::roots::complex_roots_upper;

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
fn solve_real(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

impl NumberField {
    /// Integral element whose values at the r1 + r2 stored embeddings are
    /// approximately `values`, if the rounded solution is plausible.
    /// The caller must verify the result exactly.
    pub fn element_from_embeddings(&self, values: &[Complex64]) -> Option<Vec<BigInt>> {
        let (r1, r2) = self.signature();
        let emb = self.basis_embeddings();
        let n = self.degree();
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for (k, row) in emb.iter().enumerate().take(r1 + r2) {
            a.push(row.iter().map(|z| z.re).collect::<Vec<f64>>());
            b.push(values[k].re);
            if k >= r1 {
                a.push(row.iter().map(|z| z.im).collect());
                b.push(values[k].im);
            }
        }
        let x = solve_real(a, b)?;
        let mut out = Vec::with_capacity(n);
        for v in x {
            if !v.is_finite() || (v - v.round()).abs() > 1e-3 || v.abs() > 1e15 {
                return None;
            }
            out.push(BigInt::from_f64(v.round())?);
        }
        Some(out)
    }
}

/// Evaluates an integer polynomial at an element exactly.
pub fn eval_poly_at(f: &BigIntPoly, x: &AlgebraicNumber) -> AlgebraicNumber {
    let field = x.field();
    let mut acc = AlgebraicNumber::zero(field);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &AlgebraicNumber::from_rational(field, BigRational::from_integer(c.clone()));
    }
    acc
}

/// Roots in `field` of a monic integer polynomial (all roots are integral).
pub fn integral_roots_in(field: &Field, f: &BigIntPoly) -> Vec<AlgebraicNumber> {
    let (r1, r2) = field.signature();
    let (re, up) = complex_roots_upper(f);
    let mut cands: Vec<Complex64> = re.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for z in &up {
        cands.push(*z);
        cands.push(z.conj());
    }
    let m = r1 + r2;
    let mut found: Vec<AlgebraicNumber> = Vec::new();
    let mut choice = vec![0usize; m];
    // a root of f in the field maps each real embedding to a real root of f
    // and each complex embedding to a non-real root
    fn rec(
        k: usize,
        r1: usize,
        re: usize,
        cands: &[Complex64],
        choice: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k == choice.len() {
            visit(choice);
            return;
        }
        let range = if k < r1 { 0..re } else { re..cands.len() };
        for c in range {
            choice[k] = c;
            rec(k + 1, r1, re, cands, choice, visit);
        }
    }
    let mut visit = |ch: &[usize]| {
        let vals: Vec<Complex64> = ch.iter().map(|&i| cands[i]).collect();
        if let Some(c) = field.element_from_embeddings(&vals) {
            let a = AlgebraicNumber::from_int_coords(field, &c);
            if eval_poly_at(f, &a).is_zero() && !found.contains(&a) {
                found.push(a);
            }
        }
    };
    rec(0, r1, re.len(), &cands, &mut choice, &mut visit);
    found.sort_by(|a, b| a.coords().cmp(b.coords()));
    found
}

/// Whether Q[x]/(f1) and `k2` are isomorphic: same degree and discriminant,
/// and f1 has a root in k2.
pub fn is_isomorphic(k1: &Field, k2: &Field) -> bool {
    if k1.degree() != k2.degree() || k1.disc() != k2.disc() || k1.signature() != k2.signature() {
        return false;
    }
    if k1.poly() == k2.poly() {
        return true;
    }
    !integral_roots_in(k2, k1.poly()).is_empty()
}

impl AlgebraicNumber {
    pub fn is_square(&self) -> Result<bool> {
        Ok(self.sqrt()?.is_some())
    }

    /// A square root in the field, if one exists.
    pub fn sqrt(&self) -> Result<Option<AlgebraicNumber>> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let field = self.field().clone();
        let den = self.denominator();
        let scaled = self.scale(&BigRational::from_integer(&den * &den));
        if scaled.real_signs().iter().any(|s| s.is_lt()) {
            return Ok(None);
        }
        let ic = scaled.int_coords().expect("scaled element is integral");
        // roots of x^2 - a over the field via embeddings
        let vals = field.embed_int(&ic);
        let (r1, r2) = field.signature();
        let m = r1 + r2;
        for mask in 0u32..(1u32 << m) {
            let roots: Vec<Complex64> = vals
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let r = if k < r1 { Complex64::new(v.re.max(0.0).sqrt(), 0.0) } else { v.sqrt() };
                    if mask >> k & 1 == 1 {
                        -r
                    } else {
                        r
                    }
                })
                .collect();
            if let Some(c) = field.element_from_embeddings(&roots) {
                let r = AlgebraicNumber::from_int_coords(&field, &c);
                if &r * &r == scaled {
                    let r = r.scale(&BigRational::new(BigInt::one(), den.clone()));
                    let r = if r.coords().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -&r } else { r };
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::build_field;

    fn field(c: &[i64]) -> Field {
        build_field(&BigIntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn isomorphic_cubics() {
        // x^3 - 3x - 1 and x^3 - 3x + 1 define the same field
        let a = field(&[-1, -3, 0, 1]);
        let b = field(&[1, -3, 0, 1]);
        assert!(is_isomorphic(&a, &b));
        // theta^2 - 2 generates the same field too
        let c = field(&[-1, 9, -6, 1]);
        assert!(is_isomorphic(&a, &c));
        // 3969 = 63^2 has two distinct cyclic cubic fields
        let d = field(&[-35, -21, 0, 1]);
        let e = field(&[28, -21, 0, 1]);
        assert_eq!(d.disc(), e.disc());
        assert!(!is_isomorphic(&d, &e));
    }

    #[test]
    fn squares() {
        let k = field(&[-2, 0, 1]);
        let t = AlgebraicNumber::theta(&k);
        let u = &AlgebraicNumber::from_i64(&k, 3) + &t.scale(&BigRational::from_integer(2.into()));
        assert!(u.is_square().unwrap());
        assert!(!t.is_square().unwrap());
        let q = field(&[3, 0, 1]);
        assert!(AlgebraicNumber::from_i64(&q, -3).is_square().unwrap());
        assert!(!AlgebraicNumber::from_i64(&q, -1).is_square().unwrap());
        let w = AlgebraicNumber::from_i64(&q, 1).scale(&BigRational::new(1.into(), 4.into()));
        assert!(w.is_square().unwrap());
    }
}
