//! Elements of a number field as rational coordinates over the integral basis.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{power_reduce, Field};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{rat_det, RatMatrix};
use crate::exactmath::poly::{rat_to_f64, BigIntPoly, RatPoly};
use crate::exactmath::roots::sign_at_root;

#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Field,
    coords: Vec<BigRational>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) && self.coords == other.coords
    }
}

impl Eq for AlgebraicNumber {}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for AlgebraicNumber {
    /// Power-basis expression in `t`, the root of the defining polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_power_poly();
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}*t^{k}")?,
            }
        }
        Ok(())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AlgebraicNumber {
    pub fn new(field: &Field, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), field.degree());
        AlgebraicNumber { field: field.clone(), coords }
    }

    pub fn from_int_coords(field: &Field, coords: &[BigInt]) -> Self {
        Self::new(field, coords.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn from_rational(field: &Field, q: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); field.degree()];
        c[0] = q;
        Self::new(field, c)
    }

    pub fn from_i64(field: &Field, q: i64) -> Self {
        Self::from_rational(field, rat(q))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_i64(field, 1)
    }

    /// The root of the defining polynomial.
    pub fn theta(field: &Field) -> Self {
        if field.degree() == 1 {
            return Self::from_rational(field, BigRational::from_integer(-field.poly().coeff(0)));
        }
        let mut c = vec![BigRational::zero(); field.degree()];
        c[1] = BigRational::one();
        Self::from_power_coords(field, &c)
    }

    pub fn from_power_coords(field: &Field, pc: &[BigRational]) -> Self {
        let n = field.degree();
        let inv = field.basis_inverse();
        let mut c = vec![BigRational::zero(); n];
        for (k, v) in pc.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (m, cm) in c.iter_mut().enumerate() {
                *cm += v * &inv[k][m];
            }
        }
        Self::new(field, c)
    }

    /// Value of a rational polynomial at the field generator.
    pub fn from_rat_poly(field: &Field, p: &RatPoly) -> Self {
        let n = field.degree();
        let r = power_reduce(p, &field.poly().to_rat());
        let pc: Vec<BigRational> = (0..n).map(|i| r.coeff(i)).collect();
        Self::from_power_coords(field, &pc)
    }

    pub fn from_int_poly(field: &Field, p: &BigIntPoly) -> Self {
        Self::from_rat_poly(field, &p.to_rat())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }

    /// Least positive integer d with d*self integral.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_power_poly(&self) -> RatPoly {
        let n = self.field.degree();
        let b = self.field.integral_basis();
        let mut pc = vec![BigRational::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in pc.iter_mut().enumerate() {
                *v += c * &b[i][k];
            }
        }
        RatPoly::new(pc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.field, self.coords.iter().map(|c| c * q).collect())
    }

    /// Matrix of `x -> x*self` on row coordinate vectors.
    pub fn mult_matrix(&self) -> RatMatrix {
        let n = self.field.degree();
        let t = self.field.mult_table();
        (0..n)
            .map(|i| {
                let mut row = vec![BigRational::zero(); n];
                for (j, a) in self.coords.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (k, r) in row.iter_mut().enumerate() {
                        let tk = &t[i][j][k];
                        if !tk.is_zero() {
                            *r += a * BigRational::from_integer(tk.clone());
                        }
                    }
                }
                row
            })
            .collect()
    }

    pub fn norm(&self) -> BigRational {
        if let Some(c) = self.int_coords() {
            return BigRational::from_integer(self.field.norm_int(&c));
        }
        rat_det(&self.mult_matrix())
    }

    pub fn trace(&self) -> BigRational {
        self.coords
            .iter()
            .zip(self.field.basis_traces())
            .map(|(c, t)| c * BigRational::from_integer(t.clone()))
            .sum()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        let g = self.to_power_poly();
        let f = self.field.poly().to_rat();
        let (d, s, _) = g.ext_gcd(&f);
        debug_assert_eq!(d.degree(), Some(0));
        let s = s.scale(&d.coeff(0).recip());
        Ok(Self::from_rat_poly(&self.field, &s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Characteristic polynomial of multiplication by self (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> RatPoly {
        let a = self.mult_matrix();
        let n = a.len();
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut m: RatMatrix = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = crate::exactmath::matrix::rat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = crate::exactmath::matrix::rat_mul(&a, &m);
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / rat(k as i64);
        }
        RatPoly::new(c)
    }

    /// Minimal polynomial over Q, monic.
    pub fn min_poly(&self) -> RatPoly {
        let cp = self.char_poly();
        let sf = cp.squarefree_part();
        // char poly is a power of the minimal polynomial
        sf.monic()
    }

    /// Values at the embeddings: real ones in increasing order of the
    /// generator, then one of each complex-conjugate pair.
    pub fn embeddings(&self) -> Vec<Complex64> {
        let cf: Vec<f64> = self.coords.iter().map(rat_to_f64).collect();
        self.field
            .basis_embeddings()
            .iter()
            .map(|row| row.iter().zip(&cf).map(|(w, c)| w * c).sum())
            .collect()
    }

    /// `ln|sigma_k(self)|` over the r1 + r2 embeddings. Falls back to
    /// high-precision evaluation when f64 cancellation would swamp a value.
    pub fn ln_abs_embeddings(&self) -> Vec<f64> {
        let cf: Vec<f64> = self.coords.iter().map(rat_to_f64).collect();
        let n = cf.len() as f64;
        let emb = self.field.basis_embeddings();
        let fast: Option<Vec<f64>> = emb
            .iter()
            .map(|row| {
                let z: Complex64 = row.iter().zip(&cf).map(|(w, c)| w * c).sum();
                let err: f64 = row.iter().zip(&cf).map(|(w, c)| w.norm() * c.abs()).sum::<f64>() * n * f64::EPSILON;
                let a = z.norm();
                (a.is_finite() && err.is_finite() && a > 1e6 * err).then(|| a.ln())
            })
            .collect();
        if let Some(v) = fast {
            return v;
        }
        let g = self.to_power_poly();
        let den = g.common_denominator();
        let gi: Vec<BigInt> = g.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let (r1, r2) = self.field.signature();
        let (re, up) = crate::exactmath::roots::complex_roots_upper(self.field.poly());
        let mut roots: Vec<Complex64> = re.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        roots.extend(up.iter().take(r2));
        debug_assert_eq!(roots.len(), r1 + r2);
        super::precise::ln_abs_at_roots(self.field.poly(), &roots, &gi, &den)
    }

    pub fn real_embeddings(&self) -> Vec<f64> {
        let r1 = self.field.signature().0;
        self.embeddings().into_iter().take(r1).map(|z| z.re).collect()
    }

    /// Exact signs at the real embeddings, ordered as the isolated real
    /// roots of the defining polynomial.
    pub fn real_signs(&self) -> Vec<Ordering> {
        let g = self.to_power_poly();
        self.field
            .real_root_intervals()
            .iter()
            .map(|iv| sign_at_root(self.field.poly(), iv, &g).0)
            .collect()
    }

    pub fn is_totally_positive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::domain("zero is neither positive nor negative"));
        }
        Ok(self.real_signs().into_iter().all(|s| s == Ordering::Greater))
    }

    /// Complex conjugate, when the field records a CM conjugation.
    pub fn conjugate(&self) -> Option<Self> {
        let m = self.field.cm_conjugation()?;
        let n = self.field.degree();
        let mut c = vec![BigRational::zero(); n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, ck) in c.iter_mut().enumerate() {
                if !m[i][k].is_zero() {
                    *ck += a * BigRational::from_integer(m[i][k].clone());
                }
            }
        }
        Some(Self::new(&self.field, c))
    }
}

fn same_field(a: &AlgebraicNumber, b: &AlgebraicNumber) {
    debug_assert!(Arc::ptr_eq(&a.field, &b.field) || a.field == b.field, "elements of different fields");
}

impl Add for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, o: &AlgebraicNumber) -> AlgebraicNumber {
        same_field(self, o);
        AlgebraicNumber::new(&self.field, self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, o: &AlgebraicNumber) -> AlgebraicNumber {
        same_field(self, o);
        AlgebraicNumber::new(&self.field, self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber::new(&self.field, self.coords.iter().map(|a| -a).collect())
    }
}

impl Mul for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, o: &AlgebraicNumber) -> AlgebraicNumber {
        same_field(self, o);
        let t = self.field.mult_table();
        let n = self.coords.len();
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if o.coords[j].is_zero() {
                    continue;
                }
                let ab = &self.coords[i] * &o.coords[j];
                for (k, ok) in out.iter_mut().enumerate() {
                    let tk = &t[i][j][k];
                    if !tk.is_zero() {
                        *ok += &ab * BigRational::from_integer(tk.clone());
                    }
                }
            }
        }
        AlgebraicNumber::new(&self.field, out)
    }
}
