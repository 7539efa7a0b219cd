//! The Frey curve y^2 = x(x - a^p)(x + b^p).

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactmath::intfactor::factor_bigint;
use crate::idealarith::factor_rational_prime;
use crate::numfield::AlgebraicNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPrimeValuation {
    pub q: u64,
    /// Index of the prime in the factorization of q.
    pub prime_index: usize,
    pub e: u32,
    pub f: u32,
    pub v_abc: i64,
    pub v_disc: i64,
    pub divisible_by_p: bool,
}

/// 0 <= r <= 2 + 6 v(2) for the conductor exponent at a prime above 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicBound {
    pub prime_index: usize,
    pub v_2: u32,
    pub lower: u32,
    pub upper: u32,
}

#[derive(Clone, Debug)]
pub struct FreyReport {
    pub a: AlgebraicNumber,
    pub b: AlgebraicNumber,
    pub c: AlgebraicNumber,
    pub p: u64,
    /// Discriminant of the model, from its b-invariants.
    pub discriminant: AlgebraicNumber,
    /// 16 (abc)^(2p)
    pub closed_form: AlgebraicNumber,
    /// a^p + b^p + c^p = 0
    pub is_fermat_solution: bool,
    pub odd_valuations: Vec<OddPrimeValuation>,
    pub conductor_exponent_bounds: Vec<DyadicBound>,
}

impl FreyReport {
    pub fn matches_closed_form(&self) -> bool {
        self.discriminant == self.closed_form
    }
}

/// Discriminant of y^2 = x^3 + a2 x^2 + a4 x + a6 via b2, b4, b6, b8.
fn model_discriminant(a2: &AlgebraicNumber, a4: &AlgebraicNumber, a6: &AlgebraicNumber) -> AlgebraicNumber {
    let k = a2.field();
    let c = |x: i64| AlgebraicNumber::from_i64(k, x);
    let b2 = &c(4) * a2;
    let b4 = &c(2) * a4;
    let b6 = &c(4) * a6;
    let b8 = &(&(&c(4) * a2) * a6) - &(a4 * a4);
    let t1 = &(&b2 * &b2) * &b8;
    let t2 = &c(8) * &(&(&b4 * &b4) * &b4);
    let t3 = &c(27) * &(&b6 * &b6);
    let t4 = &c(9) * &(&(&b2 * &b4) * &b6);
    &(&(&(-&t1) - &t2) - &t3) + &t4
}

pub fn frey_invariants(a: &AlgebraicNumber, b: &AlgebraicNumber, c: &AlgebraicNumber, p: u64) -> Result<FreyReport> {
    if !crate::exactmath::intfactor::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let abc = &(a * b) * c;
    if abc.is_zero() {
        return Err(Error::domain("abc = 0"));
    }
    if !(a.is_integral() && b.is_integral() && c.is_integral()) {
        return Err(Error::domain("a, b, c must be integral"));
    }
    let k = a.field().clone();
    let ap = a.pow(p);
    let bp = b.pow(p);
    let cp = c.pow(p);
    // x(x - A)(x + B) = x^3 + (B - A) x^2 - AB x
    let a2 = &bp - &ap;
    let a4 = -&(&ap * &bp);
    let disc = model_discriminant(&a2, &a4, &AlgebraicNumber::zero(&k));
    let closed = &AlgebraicNumber::from_i64(&k, 16) * &abc.pow(2 * p);
    let is_solution = (&(&ap + &bp) + &cp).is_zero();

    let mut odd = Vec::new();
    let norm = abc.norm();
    let nn = norm.numer().abs();
    for (q, _) in factor_bigint(&nn)? {
        let q = q.to_u64().ok_or_else(|| Error::cap("prime size", u64::MAX, u64::MAX - 1))?;
        if q == 2 {
            continue;
        }
        let split = factor_rational_prime(&k, q)?;
        for (i, pr) in split.factors.iter().enumerate() {
            let v_abc = pr.valuation(&abc)?;
            if v_abc == 0 {
                continue;
            }
            let v_disc = pr.valuation(&disc)?;
            odd.push(OddPrimeValuation {
                q,
                prime_index: i,
                e: pr.e(),
                f: pr.f(),
                v_abc,
                v_disc,
                divisible_by_p: v_disc % p as i64 == 0,
            });
        }
    }
    let two = factor_rational_prime(&k, 2)?;
    let dyadic = two
        .factors
        .iter()
        .enumerate()
        .map(|(i, pr)| DyadicBound { prime_index: i, v_2: pr.e(), lower: 0, upper: 2 + 6 * pr.e() })
        .collect();
    Ok(FreyReport {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        p,
        discriminant: disc,
        closed_form: closed,
        is_fermat_solution: is_solution,
        odd_valuations: odd,
        conductor_exponent_bounds: dyadic,
    })
}
