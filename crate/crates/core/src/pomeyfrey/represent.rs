//! Solving d^t = x^2 + 3y^2 with x, y integral in a totally real field.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classunit::enumerate::IdealLattice;
use crate::error::{Error, Result};
use crate::idealarith::factor_rational_prime;
use crate::numfield::{AlgebraicNumber, Field, T2Form};

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationResult {
    pub field: Field,
    pub d: AlgebraicNumber,
    pub t: u32,
    pub x: AlgebraicNumber,
    pub y: AlgebraicNumber,
    /// Bound on sum_k sigma_k(y)^2 / sigma_k(d^t) used by the enumeration.
    pub search_radius_used: f64,
}

impl RepresentationResult {
    pub fn verify(&self) -> bool {
        let lhs = self.d.pow(u64::from(self.t));
        let three = AlgebraicNumber::from_i64(&self.field, 3);
        lhs == &(&self.x * &self.x) + &(&three * &(&self.y * &self.y))
    }
}

/// A prime above 3 of residue degree 1 at which d^t reduces to 2, a
/// non-square in F_3, while x^2 + 3y^2 reduces to the square x^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod3Obstruction {
    /// Index of the prime in the factorization of 3.
    pub prime_index: usize,
    pub residue: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepresentationOutcome {
    Found(RepresentationResult),
    /// `complete` is false when the visit budget ran out first.
    NotFoundWithinBound { radius: f64, complete: bool, obstruction: Option<Mod3Obstruction> },
}

/// Residue of `a` modulo each degree-1 prime above 3; a certificate when
/// one of them is 2.
pub fn mod3_obstruction(a: &AlgebraicNumber) -> Result<Option<Mod3Obstruction>> {
    let k = a.field();
    let coords = a.int_coords().ok_or_else(|| Error::domain("element is not integral"))?;
    let split = factor_rational_prime(k, 3)?;
    for &i in &split.t {
        let pr = &split.factors[i];
        for r in 0u8..3 {
            let one = k.one_coords();
            let c: Vec<BigInt> = coords.iter().zip(&one).map(|(x, o)| x - o * BigInt::from(r)).collect();
            if pr.ideal().contains(&c) {
                if r == 2 {
                    return Ok(Some(Mod3Obstruction { prime_index: i, residue: r }));
                }
                break;
            }
        }
    }
    Ok(None)
}

/// Enumerates y with 3 sigma(y)^2 <= sigma(d^t) at every real place (a
/// complete search) and tests d^t - 3y^2 for being a square.
pub fn find_x2_3y2_representation(
    k: &Field,
    d: &AlgebraicNumber,
    t: u32,
    max_visits: usize,
) -> Result<RepresentationOutcome> {
    if t == 0 {
        return Err(Error::domain("t must be positive"));
    }
    if !k.is_totally_real() {
        return Err(Error::domain("representation search needs a totally real field"));
    }
    if !d.is_integral() {
        return Err(Error::domain("d is not integral"));
    }
    if d.is_zero() || !d.is_totally_positive()? {
        return Err(Error::domain("d is not totally positive"));
    }
    let target = d.pow(u64::from(t));
    let obstruction = mod3_obstruction(&target)?;
    let n = k.degree();
    let three = AlgebraicNumber::from_i64(k, 3);
    let found = |y: AlgebraicNumber| -> Result<Option<RepresentationResult>> {
        let rest = &target - &(&three * &(&y * &y));
        Ok(rest.sqrt()?.map(|x| RepresentationResult {
            field: k.clone(),
            d: d.clone(),
            t,
            x: normalize_sign(x),
            y: normalize_sign(y),
            search_radius_used: n as f64 / 3.0,
        }))
    };
    if let Some(r) = found(AlgebraicNumber::zero(k))? {
        return Ok(RepresentationOutcome::Found(r));
    }

    // weighted trace form sum_k sigma_k(y)^2 / sigma_k(d^t), scaled by the
    // largest sigma_k(d^t)
    let tv: Vec<f64> = target.real_embeddings();
    let scale = tv.iter().cloned().fold(0.0, f64::max);
    let emb: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = 1.into();
            k.embed_int(&e).iter().map(|z| z.re).collect()
        })
        .collect();
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|s| emb[i][s] * emb[j][s] * scale / tv[s]).sum()).collect())
        .collect();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = 1.into();
            e
        })
        .collect();
    let lattice = IdealLattice::new(&T2Form::Float(gram), &rows)
        .ok_or_else(|| Error::Inconclusive("weighted trace form is not positive definite".into()))?;
    let radius = n as f64 / 3.0;
    let mut hit = None;
    let mut err = None;
    let complete = lattice.for_each(radius * scale, max_visits, |y, _| match found(AlgebraicNumber::from_int_coords(k, &y)) {
        Ok(Some(r)) => {
            hit = Some(r);
            false
        }
        Ok(None) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    match hit {
        Some(r) => {
            debug_assert!(obstruction.is_none());
            Ok(RepresentationOutcome::Found(r))
        }
        None => Ok(RepresentationOutcome::NotFoundWithinBound { radius, complete, obstruction }),
    }
}

// Sign making the first real embedding nonnegative.
fn normalize_sign(x: AlgebraicNumber) -> AlgebraicNumber {
    match x.real_embeddings().first() {
        Some(v) if *v < 0.0 => -&x,
        _ => x,
    }
}
