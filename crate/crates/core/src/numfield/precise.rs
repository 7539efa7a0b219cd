//! Fixed-point complex evaluation, for embeddings that cancel badly in f64.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::exactmath::poly::BigIntPoly;

/// Complex number scaled by 2^p.
#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

fn from_f64(x: f64, p: u32) -> BigInt {
    // 2^52 keeps the full mantissa of any |x| < 2^970
    let v = BigInt::from_f64(x * 2f64.powi(52)).unwrap_or_default();
    if p >= 52 {
        v << (p - 52)
    } else {
        v >> (52 - p)
    }
}

impl Fixed {
    fn new(z: Complex64, p: u32) -> Self {
        Fixed { re: from_f64(z.re, p), im: from_f64(z.im, p) }
    }

    fn mul(&self, o: &Fixed, p: u32) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> p,
            im: (&self.re * &o.im + &self.im * &o.re) >> p,
        }
    }

    fn div(&self, o: &Fixed, p: u32) -> Option<Fixed> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << p;
        let im = (&self.im * &o.re - &self.re * &o.im) << p;
        Some(Fixed { re: re / &d, im: im / d })
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// ln|z| for the unscaled value; None when z rounds to zero.
    fn ln_abs(&self, p: u32) -> Option<f64> {
        let s = &self.re * &self.re + &self.im * &self.im;
        if s.is_zero() {
            return None;
        }
        let b = s.bits();
        let shift = b.saturating_sub(64);
        let top = (s >> shift).to_f64()?;
        Some(0.5 * (top.ln() + shift as f64 * std::f64::consts::LN_2) - f64::from(p) * std::f64::consts::LN_2)
    }
}

/// Horner evaluation of an integer polynomial at a scaled point.
fn eval(f: &[BigInt], z: &Fixed, p: u32) -> Fixed {
    let mut acc = Fixed { re: BigInt::zero(), im: BigInt::zero() };
    for c in f.iter().rev() {
        acc = acc.mul(z, p);
        acc.re += c << p;
    }
    acc
}

fn refine_root(f: &BigIntPoly, df: &BigIntPoly, z0: Complex64, p: u32) -> Option<Fixed> {
    let mut z = Fixed::new(z0, p);
    // quadratic convergence from ~50 good bits
    let steps = 2 + (f64::from(p) / 40.0).log2().ceil().max(0.0) as usize;
    for _ in 0..steps {
        let fz = eval(f.coeffs(), &z, p);
        let dz = eval(df.coeffs(), &z, p);
        z = z.sub(&fz.div(&dz, p)?);
    }
    Some(z)
}

/// ln|g(theta_k)| / den for each root approximation `roots`, where the
/// roots belong to the squarefree polynomial `f`. Precision grows until two
/// successive evaluations agree.
pub(crate) fn ln_abs_at_roots(f: &BigIntPoly, roots: &[Complex64], g: &[BigInt], den: &BigInt) -> Vec<f64> {
    let df = f.derivative();
    let bits_g = g.iter().map(|c| c.bits()).max().unwrap_or(1) as u32;
    let bits_f = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(1) as u32;
    let ln_den = den.to_f64().map(f64::ln).unwrap_or_else(|| {
        let b = den.bits();
        (den >> (b - 60)).to_f64().unwrap().ln() + (b - 60) as f64 * std::f64::consts::LN_2
    });
    let n = f.degree().unwrap_or(1) as u32;
    let mut p = 2 * bits_g + n * bits_f + 96;
    let at = |p: u32| -> Vec<Option<f64>> {
        roots
            .iter()
            .map(|&z0| {
                let z = refine_root(f, &df, z0, p)?;
                eval(g, &z, p).ln_abs(p)
            })
            .collect()
    };
    let mut prev = at(p);
    loop {
        p += p / 2;
        let cur = at(p);
        let settled = prev.iter().zip(&cur).all(|(a, b)| match (a, b) {
            (Some(a), Some(b)) => (a - b).abs() <= 1e-12 * (1.0 + b.abs()),
            _ => false,
        });
        if settled || p > 1 << 20 {
            return cur.into_iter().map(|v| v.unwrap_or(f64::NEG_INFINITY) - ln_den).collect();
        }
        prev = cur;
    }
}
