//! Class groups, unit groups, signs of units and narrow class numbers.
//!
//! Class groups come from relations among small prime ideals found by
//! short-vector enumeration. In unconditional mode every prime up to the
//! Minkowski bound is shown to lie in the subgroup generated by the factor
//! base, and every candidate torsion class is tested for principality by an
//! exhaustive search, so the reported group is proven.

mod classgroup;
pub(crate) mod enumerate;
mod units;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::intfactor::{factor_bigint, isqrt};
use crate::idealarith::{IntegralIdeal, PrimeIdealFactor};
use crate::numfield::{AlgebraicNumber, Field, T2Form};
use classgroup::{
    exponents_of, ideal_of_exponents, principal_generator, torsion_elements, unit_error, Engine, GroupStructure,
    Search,
};
pub use units::REGULATOR_LOWER_BOUND;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    Unconditional,
    HeuristicGRH,
}

impl Certification {
    pub fn label(self) -> &'static str {
        match self {
            Certification::Unconditional => "unconditional",
            Certification::HeuristicGRH => "heuristic-grh",
        }
    }
}

/// Largest degree handled in unconditional mode.
pub const MAX_UNCONDITIONAL_DEGREE: usize = 6;
/// Largest degree handled in heuristic mode.
pub const MAX_HEURISTIC_DEGREE: usize = 8;
/// Largest prime-ideal norm bound the factor base may need.
pub const MAX_FACTOR_BASE_BOUND: u64 = 200_000;

const MAX_ROUNDS: usize = 14;
const SEARCH_VISITS: usize = 3_000_000;

#[derive(Clone, Debug)]
pub struct ClassUnitOptions {
    pub mode: Certification,
    /// Multiplies the factor-base bound (used to check stability).
    pub bound_scale: u64,
}

impl Default for ClassUnitOptions {
    fn default() -> Self {
        ClassUnitOptions { mode: Certification::Unconditional, bound_scale: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct ClassUnitData {
    pub field: Field,
    pub h: u64,
    /// Elementary divisors, each dividing the next; empty for trivial groups.
    pub class_invariants: Vec<u64>,
    /// All prime ideals with norm up to the factor-base bound.
    pub factor_base: Vec<PrimeIdealFactor>,
    pub factor_base_bound: u64,
    pub fundamental_units: Vec<AlgebraicNumber>,
    pub torsion_order: u64,
    pub torsion_generator: AlgebraicNumber,
    pub regulator: f64,
    /// Rows: -1 followed by the fundamental units; columns: real embeddings
    /// in increasing order; entry 1 means negative.
    pub sign_matrix: Vec<Vec<u8>>,
    pub unit_index_2exp: u32,
    pub h_plus: u64,
    pub certification: Certification,
    t2: T2Form,
    group: GroupStructure,
}

#[derive(Clone, Debug)]
pub enum Principality {
    Principal(AlgebraicNumber),
    NotPrincipal,
    Inconclusive(String),
}

/// `(4/pi)^s n!/n^n sqrt|disc|`, rounded up, with pi replaced by 3.14159.
pub fn minkowski_bound(k: &Field) -> BigRational {
    let n = k.degree();
    let (_, s) = k.signature();
    if n == 1 {
        return BigRational::one();
    }
    let scale = BigInt::from(10u64).pow(12);
    let d = k.disc().abs();
    // ceil(sqrt(d) * 10^6) / 10^6
    let t = &d * &scale;
    let mut r = isqrt(&t);
    if &r * &r < t {
        r += 1;
    }
    let sqrt_d = BigRational::new(r, BigInt::from(10u64).pow(6));
    let four_over_pi = BigRational::new(BigInt::from(400_000), BigInt::from(314_159));
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= i;
    }
    let nn = BigInt::from(n).pow(n as u32);
    let mut b = BigRational::new(fact, nn) * sqrt_d;
    for _ in 0..s {
        b *= &four_over_pi;
    }
    b
}

fn factor_base_bound(k: &Field, opts: &ClassUnitOptions) -> u64 {
    let base = match opts.mode {
        Certification::Unconditional => minkowski_bound(k).floor().to_integer().to_u64().unwrap_or(u64::MAX),
        Certification::HeuristicGRH => {
            let l = k.disc().abs().to_f64().unwrap_or(f64::MAX).ln();
            30u64.max((0.3 * l * l).ceil() as u64)
        }
    };
    base.saturating_mul(opts.bound_scale.max(1))
}

fn trivial_data(field: &Field, mode: Certification) -> ClassUnitData {
    let minus_one = AlgebraicNumber::from_i64(field, -1);
    ClassUnitData {
        field: field.clone(),
        h: 1,
        class_invariants: vec![],
        factor_base: vec![],
        factor_base_bound: 1,
        fundamental_units: vec![],
        torsion_order: 2,
        torsion_generator: minus_one,
        regulator: 1.0,
        sign_matrix: vec![vec![1]],
        unit_index_2exp: 1,
        h_plus: 1,
        certification: mode,
        t2: field.t2_form(),
        group: GroupStructure {
            k: 0,
            diag: vec![],
            v_inv: crate::exactmath::matrix::IntegerMatrix::identity(0),
        },
    }
}

/// Extra harvest passes allowed when a principality search runs out.
const MAX_RETRIES: usize = 4;

/// Class group and unit group in one pass.
pub fn class_unit_data(field: &Field, opts: &ClassUnitOptions) -> Result<ClassUnitData> {
    let n = field.degree();
    let cap = match opts.mode {
        Certification::Unconditional => MAX_UNCONDITIONAL_DEGREE,
        Certification::HeuristicGRH => MAX_HEURISTIC_DEGREE,
    };
    if n > cap {
        return Err(Error::cap("degree", n as u64, cap as u64));
    }
    if n == 1 {
        return Ok(trivial_data(field, opts.mode));
    }
    let bound = factor_base_bound(field, opts);
    if bound > MAX_FACTOR_BASE_BOUND {
        return Err(Error::cap("factor base bound", bound, MAX_FACTOR_BASE_BOUND));
    }
    let table_bound = bound.max(60);
    let mut engine = Engine::new(field, table_bound, 0)?;
    let target = engine.table.list.iter().take_while(|p| p.norm() <= BigInt::from(bound)).count();
    let small = match opts.mode {
        Certification::Unconditional => {
            engine.table.list.iter().take_while(|p| p.norm() <= BigInt::from(40)).count().min(target)
        }
        Certification::HeuristicGRH => target,
    };
    engine.k = small;

    let (w, zeta) = units::torsion(field);
    let mut round = 0usize;
    let mut retries = 0;
    let group = 'outer: loop {
        // harvest until the relation lattice and the unit group look complete
        let mut prev: Option<Vec<BigInt>> = None;
        let mut stable = 0;
        let start = round;
        loop {
            if round >= start + MAX_ROUNDS {
                return Err(unit_error("relation search"));
            }
            engine.harvest(round);
            engine.pair_units();
            if !engine.units.full() && round >= 1 {
                engine.kernel_units();
            }
            round += 1;
            match engine.structure() {
                Some(st) if engine.units.full() => {
                    let inv = st.invariants();
                    if prev.as_ref() == Some(&inv) {
                        stable += 1;
                    } else {
                        stable = 0;
                    }
                    prev = Some(inv);
                    if stable >= 1 {
                        break;
                    }
                }
                st => {
                    // too few small primes to generate the group: widen
                    if st.is_none() && (round - start) % 3 == 0 && engine.k < engine.table.list.len() {
                        engine.k += 1;
                    }
                    prev = None;
                    stable = 0;
                }
            }
        }
        units::saturate(field, &mut engine.units, w, &zeta)?;
        if opts.mode == Certification::HeuristicGRH {
            break engine.structure().expect("full rank");
        }
        // every prime up to the bound lies in the span of the factor base
        for j in engine.k..target {
            if !engine.verify_prime(j, 4) {
                engine.k = j + 1;
                continue 'outer;
            }
        }
        // no nontrivial candidate torsion class is principal
        loop {
            let st = engine.structure().expect("full rank");
            let order = st.order();
            let mut restart = false;
            let ls: Vec<BigInt> = if order.is_one() {
                vec![]
            } else {
                factor_bigint(&order)?.into_iter().map(|(p, _)| p).collect()
            };
            'ls: for l in ls {
                let l = l.to_u64().expect("small class number prime");
                for y in torsion_elements(&st, l) {
                    let x = exponents_of(&st, &y);
                    let ideal = ideal_of_exponents(&engine.table, &engine.t2, field, &x);
                    match principal_generator(&ideal, &engine.t2, &engine.units.basis, SEARCH_VISITS) {
                        Search::Found(_) => {
                            engine.extra.push(x);
                            restart = true;
                            break 'ls;
                        }
                        Search::Absent => {}
                        // a large generator usually means missing relations: harvest more first
                        Search::Budget if retries < MAX_RETRIES => {
                            retries += 1;
                            continue 'outer;
                        }
                        Search::Budget => {
                            return Err(Error::Inconclusive("principality search exceeded its budget".into()))
                        }
                    }
                }
            }
            if !restart {
                break 'outer st;
            }
        }
    };

    let fundamental_units = engine.units.basis.clone();
    let regulator = engine.units.regulator();
    let invariants: Vec<u64> = group.invariants().iter().map(|d| d.to_u64().expect("class group too large")).collect();
    let h: u64 = invariants.iter().product();
    let sign_matrix = units::sign_matrix(&fundamental_units, field);
    let r1 = field.signature().0;
    let rank = units::rank_f2(&sign_matrix) as u32;
    let h_plus = (h << r1) >> rank;
    let factor_base = engine.table.list[..target].to_vec();
    Ok(ClassUnitData {
        field: field.clone(),
        h,
        class_invariants: invariants,
        factor_base,
        factor_base_bound: bound,
        fundamental_units,
        torsion_order: w,
        torsion_generator: zeta,
        regulator,
        sign_matrix,
        unit_index_2exp: rank,
        h_plus,
        certification: opts.mode,
        t2: engine.t2,
        group,
    })
}

pub fn class_number(field: &Field, mode: Certification) -> Result<ClassUnitData> {
    class_unit_data(field, &ClassUnitOptions { mode, bound_scale: 1 })
}

pub fn unit_group(field: &Field) -> Result<ClassUnitData> {
    class_number(field, Certification::Unconditional)
}

/// `(h_plus, k)` with `[U : U+] = 2^k`; totally real fields only.
pub fn narrow_class_number(field: &Field) -> Result<(u64, u32)> {
    if !field.is_totally_real() {
        return Err(Error::domain("narrow class number needs a totally real field"));
    }
    let d = unit_group(field)?;
    Ok((d.h_plus, d.unit_index_2exp))
}

impl ClassUnitData {
    pub fn unit_rank(&self) -> usize {
        self.fundamental_units.len()
    }

    /// True iff every totally positive unit is a square.
    pub fn totally_positive_units_are_squares(&self) -> bool {
        self.unit_index_2exp as usize == self.field.signature().0
    }

    /// Generator search bounded by the fundamental units. A completed search
    /// without a hit proves the ideal is not principal.
    pub fn is_principal(&self, ideal: &IntegralIdeal) -> Principality {
        if ideal.is_one() {
            return Principality::Principal(AlgebraicNumber::one(&self.field));
        }
        match principal_generator(ideal, &self.t2, &self.fundamental_units, SEARCH_VISITS) {
            Search::Found(c) => {
                let g = AlgebraicNumber::from_int_coords(&self.field, &c);
                match IntegralIdeal::principal(&g) {
                    Ok(p) if p == *ideal => Principality::Principal(g),
                    _ => Principality::Inconclusive("generator failed verification".into()),
                }
            }
            Search::Absent if self.h > 1 => Principality::NotPrincipal,
            Search::Absent => Principality::Inconclusive("search missed a generator in a trivial class group".into()),
            Search::Budget => Principality::Inconclusive("generator search exceeded its budget".into()),
        }
    }

    /// Units generated by torsion and the fundamental units with exponents
    /// in [-m, m] (torsion exponent over its full range).
    pub fn small_units(&self, m: i64) -> Vec<AlgebraicNumber> {
        let r = self.fundamental_units.len();
        let mut out = Vec::new();
        let mut e = vec![-m; r];
        loop {
            let base = units::unit_product(&self.field, &self.fundamental_units, &e);
            let mut z = base;
            for _ in 0..self.torsion_order {
                out.push(z.clone());
                z = &z * &self.torsion_generator;
            }
            let mut k = 0;
            loop {
                if k == r {
                    return out;
                }
                e[k] += 1;
                if e[k] <= m {
                    break;
                }
                e[k] = -m;
                k += 1;
            }
        }
    }

    /// h is odd.
    pub fn h_is_odd(&self) -> bool {
        self.h.is_odd()
    }

    pub fn group_order_check(&self) -> bool {
        let prod: u64 = self.class_invariants.iter().product();
        prod == self.h && !self.group.order().is_zero()
    }
}

/// Principality of an ideal, computing the class and unit data first.
pub fn is_principal(ideal: &IntegralIdeal, mode: Certification) -> Result<Principality> {
    let data = class_number(ideal.field(), mode)?;
    Ok(data.is_principal(ideal))
}

#[cfg(test)]
mod tests;
