//! Bounded search for solutions of x^p + y^p + z^p = 0 in a box of
//! integral-basis coordinates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fltscreen::{check_assumption, Verdict};
use crate::idealarith::IntegralIdeal;
use crate::numfield::Field;

/// Upper limit on the number of (x, y) pairs scanned.
pub const MAX_SEARCH_PAIRS: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatSolution {
    pub x: Vec<BigInt>,
    pub y: Vec<BigInt>,
    pub z: Vec<BigInt>,
    /// xyz = 0
    pub trivial: bool,
    /// xyz lies in 3 O_K
    pub three_divides: bool,
    /// (x, y, z) = (1) as an ideal
    pub primitive: bool,
}

#[derive(Clone, Debug)]
pub struct FermatSearchReport {
    pub degree: usize,
    pub p: u64,
    pub height_bound: i64,
    pub pairs_scanned: u64,
    pub trivial_count: u64,
    pub nontrivial: Vec<FermatSolution>,
    /// The field passes the screen and p = 2 mod 3, so every nontrivial
    /// solution must have 3 | xyz.
    pub screened: bool,
    /// Nontrivial solutions with 3 not dividing xyz in a screened setting.
    pub counterexamples: Vec<FermatSolution>,
}

pub fn classify_triple(k: &Field, x: &[BigInt], y: &[BigInt], z: &[BigInt]) -> Result<FermatSolution> {
    let xyz = k.mul_int(&k.mul_int(x, y), z);
    let trivial = xyz.iter().all(Zero::is_zero);
    let three = BigInt::from(3);
    let three_divides = xyz.iter().all(|c| c.is_multiple_of(&three));
    let gens: Vec<Vec<BigInt>> =
        [x, y, z].iter().filter(|v| v.iter().any(|c| !c.is_zero())).map(|v| v.to_vec()).collect();
    let primitive = !gens.is_empty() && IntegralIdeal::from_generators(k, &gens)?.is_one();
    Ok(FermatSolution { x: x.to_vec(), y: y.to_vec(), z: z.to_vec(), trivial, three_divides, primitive })
}

type Coords = Vec<i128>;

fn mul_i128(table: &[Vec<Vec<i128>>], a: &[i128], b: &[i128]) -> Option<Coords> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = a[i].checked_mul(b[j])?;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                *o = o.checked_add(ab.checked_mul(*t)?)?;
            }
        }
    }
    Some(out)
}

fn box_point(idx: u64, n: usize, h: i64) -> Vec<i64> {
    let side = (2 * h + 1) as u64;
    let mut r = idx;
    (0..n)
        .map(|_| {
            let c = (r % side) as i64 - h;
            r /= side;
            c
        })
        .collect()
}

/// Every (x, y, z) with all coordinates in [-h, h] and x^p + y^p + z^p = 0.
/// Pairs (x, y) are scanned exhaustively and z is looked up among the p-th
/// powers of the box, so the search is exact.
pub fn exhaustive_fermat_search(k: &Field, p: u64, h: i64) -> Result<FermatSearchReport> {
    if !crate::exactmath::intfactor::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if h < 0 {
        return Err(Error::domain("height bound must be nonnegative"));
    }
    let n = k.degree();
    let side = (2 * h + 1) as u64;
    let points = side
        .checked_pow(n as u32)
        .ok_or_else(|| Error::cap("search box size", u64::MAX, MAX_SEARCH_PAIRS))?;
    let pairs = points.saturating_mul(points);
    if pairs > MAX_SEARCH_PAIRS {
        return Err(Error::cap("search pairs", pairs, MAX_SEARCH_PAIRS));
    }
    let table: Vec<Vec<Vec<i128>>> = k
        .mult_table()
        .iter()
        .map(|r| r.iter().map(|c| c.iter().map(|x| x.to_i128().unwrap()).collect()).collect())
        .collect();
    let one: Coords = k.one_coords().iter().map(|x| x.to_i128().unwrap()).collect();
    let overflow = || Error::cap("coordinate size of p-th powers (bits)", 128, 127);
    let powers: Vec<Coords> = (0..points)
        .into_par_iter()
        .map(|idx| {
            let a: Coords = box_point(idx, n, h).iter().map(|&c| i128::from(c)).collect();
            let mut acc = one.clone();
            for _ in 0..p {
                acc = mul_i128(&table, &acc, &a)?;
            }
            Some(acc)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(overflow)?;
    let lookup: HashMap<&[i128], u64> = powers.iter().enumerate().map(|(i, c)| (c.as_slice(), i as u64)).collect();

    let hits: Vec<Vec<(u64, u64, u64)>> = (0..points)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut s = vec![0i128; n];
            for j in 0..points {
                let mut ok = true;
                for t in 0..n {
                    match powers[i as usize][t].checked_add(powers[j as usize][t]).and_then(i128::checked_neg) {
                        Some(v) => s[t] = v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    if let Some(&l) = lookup.get(s.as_slice()) {
                        out.push((i, j, l));
                    }
                }
            }
            out
        })
        .collect();

    let screened = p % 3 == 2 && check_assumption(k).verdict == Verdict::Satisfied;
    let to_big = |idx: u64| -> Vec<BigInt> { box_point(idx, n, h).into_iter().map(BigInt::from).collect() };
    let mut trivial_count = 0u64;
    let mut nontrivial = Vec::new();
    let mut counterexamples = Vec::new();
    let zero = points / 2; // index of the origin
    for (i, j, l) in hits.into_iter().flatten() {
        if i == zero || j == zero || l == zero {
            trivial_count += 1;
            continue;
        }
        let sol = classify_triple(k, &to_big(i), &to_big(j), &to_big(l))?;
        if sol.trivial {
            trivial_count += 1;
            continue;
        }
        if screened && !sol.three_divides {
            counterexamples.push(sol.clone());
        }
        nontrivial.push(sol);
    }
    Ok(FermatSearchReport {
        degree: n,
        p,
        height_bound: h,
        pairs_scanned: pairs,
        trivial_count,
        nontrivial,
        screened,
        counterexamples,
    })
}
