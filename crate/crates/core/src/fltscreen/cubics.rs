//! Complete enumeration of totally real cubic fields by discriminant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::{check_assumption_with, AssumptionReport};
use crate::classunit::Certification;
use crate::error::{Error, Result};
use crate::exactmath::intfactor::factor_bigint;
use crate::exactmath::poly::BigIntPoly;
use crate::exactmath::zfactor::irreducibility_witness;
use crate::numfield::{build_field, is_isomorphic, Field};

pub const MAX_CUBIC_DISC: u64 = 10_000;

/// Upper bound for T2 of a generator with trace 0 or 1 (Hunter), enlarged
/// by one for safety.
pub fn hunter_t2_bound(max_disc: u64) -> f64 {
    let gamma2 = (4.0f64 / 3.0).sqrt();
    1.0 / 3.0 + gamma2 * (max_disc as f64 / 3.0).sqrt() + 1.0
}

#[derive(Clone, Debug)]
pub struct CubicScreen {
    pub field: Field,
    pub report: AssumptionReport,
}

// Smallest |disc K| compatible with disc(f) = index^2 * disc K.
fn min_field_disc(d: &BigInt) -> Result<BigInt> {
    let mut out = BigInt::one();
    for (p, e) in factor_bigint(&d.abs())? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

fn canonical_key(f: &BigIntPoly) -> (BigInt, BigInt, Vec<BigInt>) {
    let a = f.coeff(2);
    let b = f.coeff(1);
    let t2 = &a * &a - BigInt::from(2) * &b;
    let c = f.coeff(0).abs();
    (t2, c, f.coeffs().iter().rev().cloned().collect())
}

/// Candidate fields (one polynomial per isomorphism class), sorted by
/// (|disc|, canonical polynomial).
fn cubic_fields(max_disc: u64) -> Result<Vec<Field>> {
    let tmax = hunter_t2_bound(max_disc);
    let mut boxes: Vec<(i64, i64)> = Vec::new();
    for a in [0i64, -1] {
        let bmin = (((a * a) as f64 - tmax) / 2.0).floor() as i64 - 1;
        let bmax = if a == 0 { -1 } else { 0 };
        for b in bmin..=bmax {
            boxes.push((a, b));
        }
    }
    let found: Vec<Result<Vec<Field>>> = boxes
        .par_iter()
        .map(|&(a, b)| {
            let t2 = (a * a - 2 * b) as f64;
            if t2 > tmax {
                return Ok(vec![]);
            }
            let cmax = (t2 / 3.0).powf(1.5).ceil() as i64 + 1;
            let cmin = if a == 0 { 1 } else { -cmax };
            let mut out = Vec::new();
            for c in cmin..=cmax {
                let f = BigIntPoly::from_i64(&[c, b, a, 1]);
                let d = f.discriminant()?;
                if !d.is_positive() {
                    continue;
                }
                if min_field_disc(&d)? > BigInt::from(max_disc) {
                    continue;
                }
                if irreducibility_witness(&f).is_err() {
                    continue;
                }
                let k = build_field(&f)?;
                if k.disc().abs() <= BigInt::from(max_disc) {
                    out.push(k);
                }
            }
            Ok(out)
        })
        .collect();
    let mut by_disc: BTreeMap<BigInt, Vec<Field>> = BTreeMap::new();
    for r in found {
        for k in r? {
            by_disc.entry(k.disc().clone()).or_default().push(k);
        }
    }
    let mut fields = Vec::new();
    for (_, mut ks) in by_disc {
        ks.sort_by_key(|k| canonical_key(k.poly()));
        let mut reps: Vec<Field> = Vec::new();
        for k in ks {
            if !reps.iter().any(|r| is_isomorphic(r, &k)) {
                reps.push(k);
            }
        }
        fields.extend(reps);
    }
    Ok(fields)
}

/// Every totally real cubic field with |disc| <= max_disc (up to
/// isomorphism), each screened.
pub fn enumerate_totally_real_cubics(max_disc: u64, mode: Certification) -> Result<Vec<CubicScreen>> {
    if max_disc > MAX_CUBIC_DISC {
        return Err(Error::cap("cubic discriminant bound", max_disc, MAX_CUBIC_DISC));
    }
    let fields = cubic_fields(max_disc)?;
    let screens: Vec<CubicScreen> = fields
        .par_iter()
        .map(|k| CubicScreen { field: k.clone(), report: check_assumption_with(k, mode) })
        .collect();
    Ok(screens)
}
