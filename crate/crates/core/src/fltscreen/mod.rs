//! Screening totally real fields: splitting of 3, the class number of
//! K(sqrt -3), parity obstructions from ambiguous classes, and the
//! enumeration of totally real cubic fields.

mod cubics;
mod cyclo;

use std::fmt;

use crate::classunit::{class_number, Certification};
use crate::error::{Error, Result};
use crate::idealarith::{factor_rational_prime, ramified_primes_in_quadratic_ext, PrimeIdealFactor};
use crate::numfield::{adjoin_sqrt_minus3, adjoin_sqrt_neg, Field};

pub use cubics::{enumerate_totally_real_cubics, hunter_t2_bound, CubicScreen, MAX_CUBIC_DISC};
pub use cyclo::{
    cyclotomic_real_subfield, cyclotomic_real_subfield_poly, sunit_contrast_report, CyclotomicReport, ParityEvidence,
    SUnitContrast,
};

/// Exponents covered by the main theorem for fields passing the screen.
pub const THEOREM_SCOPE: &str = "p = 2 (mod 3) and p > C_K";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RamificationPattern {
    /// 3 = p^n with n = [K:Q] odd.
    TotallyRamifiedOddDegree,
    /// 3 = p0^k * prod p_i^(2 k_i) with k odd and some factor of degree 1.
    MixedOddPlusEvenSquares,
    Fails,
}

impl RamificationPattern {
    /// Fields with the mixed pattern are never Galois over Q.
    pub fn galois_compatible(self) -> bool {
        !matches!(self, RamificationPattern::MixedOddPlusEvenSquares)
    }

    pub fn label(self) -> &'static str {
        match self {
            RamificationPattern::TotallyRamifiedOddDegree => "totally-ramified-odd-degree",
            RamificationPattern::MixedOddPlusEvenSquares => "mixed-odd-plus-even-squares",
            RamificationPattern::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    NotTotallyReal,
    T3Empty,
    V3Empty,
    ClassNumberEven,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::NotTotallyReal => "not totally real",
            FailReason::T3Empty => "T_3 empty",
            FailReason::V3Empty => "V_3 empty",
            FailReason::ClassNumberEven => "class number even",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Fails(FailReason),
    Inconclusive(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Fails(_) => "fails",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionVerdict {
    ForcesEvenClassNumber,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionResult {
    pub p: u64,
    pub gamma: usize,
    pub r: usize,
    pub s: usize,
    pub verdict: ObstructionVerdict,
    /// The 2-rank lower bound gamma - 1 for the ambiguous classes.
    pub ambiguous_lower_bound_2exp: i64,
}

#[derive(Clone, Debug)]
pub struct AssumptionReport {
    pub field: Field,
    /// (e, f) of the primes above 3, in factorization order.
    pub splitting_of_3: Vec<(u32, u32)>,
    pub t3: Vec<PrimeIdealFactor>,
    pub v3: Vec<PrimeIdealFactor>,
    pub t3_nonempty: bool,
    pub v3_nonempty: bool,
    pub pattern: RamificationPattern,
    pub obstruction: Option<ObstructionResult>,
    /// h(K(sqrt -3)) when computed.
    pub t: Option<u64>,
    pub certification: Option<Certification>,
    pub t_odd: Option<bool>,
    pub verdict: Verdict,
}

fn pattern_from(n: usize, ef: &[(u32, u32)]) -> RamificationPattern {
    if ef.len() == 1 && ef[0] == (n as u32, 1) && n % 2 == 1 {
        return RamificationPattern::TotallyRamifiedOddDegree;
    }
    let odd = ef.iter().filter(|(e, _)| e % 2 == 1).count();
    if ef.len() >= 2 && odd == 1 && ef.iter().any(|&(_, f)| f == 1) {
        return RamificationPattern::MixedOddPlusEvenSquares;
    }
    RamificationPattern::Fails
}

pub fn classify_ramification_pattern(k: &Field) -> Result<RamificationPattern> {
    let s = factor_rational_prime(k, 3)?;
    Ok(pattern_from(k.degree(), &s.ef()))
}

/// Text form of the factorization of 3 as in the screening table, e.g.
/// `p^3` or `p1 p2^2`.
pub fn splitting_label(ef: &[(u32, u32)]) -> String {
    if ef.len() == 1 {
        return if ef[0].0 == 1 { "p".into() } else { format!("p^{}", ef[0].0) };
    }
    // unramified factors first, then by exponent
    let mut es: Vec<u32> = ef.iter().map(|&(e, _)| e).collect();
    es.sort_unstable();
    es.iter()
        .enumerate()
        .map(|(i, &e)| if e == 1 { format!("p{}", i + 1) } else { format!("p{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lower bound on ambiguous classes of K(sqrt -p)/K from the number of
/// ramified primes.
pub fn ambiguous_parity_obstruction(k: &Field, p: u64) -> Result<ObstructionResult> {
    if p == 2 || !crate::exactmath::intfactor::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if !k.is_totally_real() {
        return Err(Error::domain("obstruction needs a totally real field"));
    }
    let rel = adjoin_sqrt_neg(k, p as i64)?;
    let rep = ramified_primes_in_quadratic_ext(&rel)?;
    let (r, s) = k.signature();
    let gamma = rep.gamma;
    Ok(ObstructionResult {
        p,
        gamma,
        r,
        s,
        verdict: if gamma >= 2 { ObstructionVerdict::ForcesEvenClassNumber } else { ObstructionVerdict::Inconclusive },
        ambiguous_lower_bound_2exp: gamma as i64 - 1,
    })
}

/// Evaluates the three conditions in order. Only an unconditional odd class
/// number yields `Satisfied`.
pub fn check_assumption(k: &Field) -> AssumptionReport {
    check_assumption_with(k, Certification::Unconditional)
}

pub fn check_assumption_with(k: &Field, mode: Certification) -> AssumptionReport {
    let mut rep = AssumptionReport {
        field: k.clone(),
        splitting_of_3: vec![],
        t3: vec![],
        v3: vec![],
        t3_nonempty: false,
        v3_nonempty: false,
        pattern: RamificationPattern::Fails,
        obstruction: None,
        t: None,
        certification: None,
        t_odd: None,
        verdict: Verdict::Inconclusive(String::new()),
    };
    let split = match factor_rational_prime(k, 3) {
        Ok(s) => s,
        Err(e) => {
            rep.verdict = Verdict::Inconclusive(e.to_string());
            return rep;
        }
    };
    rep.splitting_of_3 = split.ef();
    rep.t3 = split.t.iter().map(|&i| split.factors[i].clone()).collect();
    rep.v3 = split.v.iter().map(|&i| split.factors[i].clone()).collect();
    rep.t3_nonempty = !rep.t3.is_empty();
    rep.v3_nonempty = !rep.v3.is_empty();
    rep.pattern = pattern_from(k.degree(), &rep.splitting_of_3);
    if !k.is_totally_real() {
        rep.verdict = Verdict::Fails(FailReason::NotTotallyReal);
        return rep;
    }
    if !rep.t3_nonempty {
        rep.verdict = Verdict::Fails(FailReason::T3Empty);
        return rep;
    }
    if !rep.v3_nonempty {
        rep.verdict = Verdict::Fails(FailReason::V3Empty);
        return rep;
    }
    match ambiguous_parity_obstruction(k, 3) {
        Ok(ob) => {
            let even = ob.verdict == ObstructionVerdict::ForcesEvenClassNumber;
            rep.obstruction = Some(ob);
            if even {
                rep.t_odd = Some(false);
                rep.verdict = Verdict::Fails(FailReason::ClassNumberEven);
                return rep;
            }
        }
        Err(e) => {
            rep.verdict = Verdict::Inconclusive(e.to_string());
            return rep;
        }
    }
    let top = match adjoin_sqrt_minus3(k) {
        Ok(rel) => rel.top().clone(),
        Err(e) => {
            rep.verdict = Verdict::Inconclusive(e.to_string());
            return rep;
        }
    };
    match class_number(&top, mode) {
        Ok(data) => {
            rep.t = Some(data.h);
            rep.certification = Some(mode);
            rep.t_odd = Some(data.h % 2 == 1);
            rep.verdict = match (mode, data.h % 2 == 1) {
                (Certification::Unconditional, true) => Verdict::Satisfied,
                (Certification::Unconditional, false) => Verdict::Fails(FailReason::ClassNumberEven),
                (Certification::HeuristicGRH, _) => {
                    Verdict::Inconclusive("class number computed under GRH only".into())
                }
            };
        }
        Err(e) => rep.verdict = Verdict::Inconclusive(e.to_string()),
    }
    debug_assert!(rep.verdict != Verdict::Satisfied || rep.v3.len() == 1);
    rep
}

#[cfg(test)]
mod tests;
