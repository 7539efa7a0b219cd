//! Serialized report shapes. Large integers are decimal strings; field
//! elements are power-basis expressions in `t`, a root of the defining
//! polynomial.

use serde::{Deserialize, Serialize};

use flt_core::classunit::Certification;
use flt_core::fltscreen::{
    splitting_label, AssumptionReport, CyclotomicReport, ObstructionVerdict, ParityEvidence, Verdict, THEOREM_SCOPE,
};
use flt_core::numfield::Field;
use flt_core::pomeyfrey::{
    EigenvalueBound, FermatSearchReport, FreyReport, PIdentityReport, QuadraticFormIdentity, RepresentationOutcome,
    ResidueSignProfile, SpotCheck, SteinbergExclusion, VerificationOutcome,
};

pub const SCHEMA: u32 = 1;

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub schema: u32,
    pub poly: String,
    pub degree: usize,
    pub signature: [usize; 2],
    pub disc: String,
    pub index: String,
    pub integral_basis: Vec<String>,
}

impl FieldInfo {
    pub fn new(k: &Field) -> Self {
        let (r, s) = k.signature();
        FieldInfo {
            schema: SCHEMA,
            poly: k.poly().to_string(),
            degree: k.degree(),
            signature: [r, s],
            disc: k.disc().to_string(),
            index: k.index().to_string(),
            integral_basis: (0..k.degree()).map(|i| k.basis_poly(i).to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeShape {
    pub e: u32,
    pub f: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub p: u64,
    pub gamma: usize,
    pub forces_even: bool,
    pub ambiguous_lower_bound_2exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub poly: String,
    pub degree: usize,
    pub signature: [usize; 2],
    pub disc: String,
    pub verdict: String,
    pub reasons: Vec<String>,
    pub splitting_of_3: Vec<PrimeShape>,
    pub ramification: String,
    pub pattern: String,
    pub t3_nonempty: bool,
    pub v3_nonempty: bool,
    pub obstruction: Option<Obstruction>,
    pub t: Option<u64>,
    pub certification: Option<String>,
    /// Exponents covered when the verdict is satisfied.
    pub scope: Option<String>,
}

impl CheckReport {
    pub fn new(r: &AssumptionReport) -> Self {
        let k = &r.field;
        let (sr, ss) = k.signature();
        let reasons = match &r.verdict {
            Verdict::Satisfied => vec![],
            Verdict::Fails(why) => vec![why.to_string()],
            Verdict::Inconclusive(msg) => vec![msg.clone()],
        };
        CheckReport {
            schema: SCHEMA,
            poly: k.poly().to_string(),
            degree: k.degree(),
            signature: [sr, ss],
            disc: k.disc().to_string(),
            verdict: r.verdict.label().to_string(),
            reasons,
            splitting_of_3: r.splitting_of_3.iter().map(|&(e, f)| PrimeShape { e, f }).collect(),
            ramification: if r.splitting_of_3.is_empty() { String::new() } else { splitting_label(&r.splitting_of_3) },
            pattern: r.pattern.label().to_string(),
            t3_nonempty: r.t3_nonempty,
            v3_nonempty: r.v3_nonempty,
            obstruction: r.obstruction.as_ref().map(|o| Obstruction {
                p: o.p,
                gamma: o.gamma,
                forces_even: o.verdict == ObstructionVerdict::ForcesEvenClassNumber,
                ambiguous_lower_bound_2exp: o.ambiguous_lower_bound_2exp,
            }),
            t: r.t,
            certification: r.certification.map(|c| c.label().to_string()),
            scope: (r.verdict == Verdict::Satisfied).then(|| THEOREM_SCOPE.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub poly: String,
    pub abs_disc: u64,
    pub t: u64,
    pub ramification: String,
    pub pattern: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErratumNote {
    pub abs_disc: u64,
    pub listed_poly: String,
    pub corrected_poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDiff {
    pub passes: bool,
    pub expected_rows: usize,
    pub matched: usize,
    pub errata: Vec<ErratumNote>,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: u32,
    pub max_disc: u64,
    pub certification: String,
    /// Only fields of this degree are enumerated.
    pub degree: usize,
    pub fields_enumerated: usize,
    pub rows: Vec<TableRow>,
    /// Fields whose screen did not finish, by defining polynomial.
    pub inconclusive: Vec<String>,
    pub diff: Option<GoldenDiff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicOut {
    pub schema: u32,
    pub n: u32,
    pub degree: usize,
    pub poly: String,
    pub two_inert: bool,
    pub three_totally_ramified: bool,
    pub stv_singleton: bool,
    /// "computed" or "by-cited-result".
    pub class_parity: String,
    pub t: Option<u64>,
    pub assumption_holds: bool,
    pub verdict: Option<String>,
}

impl CyclotomicOut {
    pub fn new(r: &CyclotomicReport) -> Self {
        let (parity, t) = match r.parity {
            ParityEvidence::Computed(h) => ("computed", Some(h)),
            ParityEvidence::ByCitedResult => ("by-cited-result", None),
        };
        CyclotomicOut {
            schema: SCHEMA,
            n: r.n,
            degree: r.degree,
            poly: r.poly.to_string(),
            two_inert: r.two_inert,
            three_totally_ramified: r.three_totally_ramified,
            stv_singleton: r.stv_singleton,
            class_parity: parity.to_string(),
            t,
            assumption_holds: r.assumption_holds(),
            verdict: r.assumption.as_ref().map(|a| a.verdict.label().to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PIdentityOut {
    /// "holds", "holds-with-adjusted-range" or "fails".
    pub outcome: String,
    pub r_max: Option<usize>,
    pub factor_power: Option<u32>,
    pub coefficients: Vec<String>,
    pub stated_coefficients: Vec<String>,
    pub quotient_by_square: Vec<String>,
    pub counterexample: Option<[String; 4]>,
    pub p_mod_3_consequence: bool,
}

impl PIdentityOut {
    pub fn new(r: &PIdentityReport) -> Self {
        let (outcome, r_max, power, coeffs, cx) = match &r.outcome {
            VerificationOutcome::Holds => ("holds", None, Some(2), strs(&r.quotient_by_square), None),
            VerificationOutcome::HoldsWithAdjustedRange(a) => {
                ("holds-with-adjusted-range", Some(a.r_max), Some(a.factor_power), strs(&a.coefficients), None)
            }
            VerificationOutcome::FailsWithCounterexample { u, v, lhs, rhs } => {
                ("fails", None, None, vec![], Some([u.to_string(), v.to_string(), lhs.to_string(), rhs.to_string()]))
            }
        };
        PIdentityOut {
            outcome: outcome.to_string(),
            r_max,
            factor_power: power,
            coefficients: coeffs,
            stated_coefficients: strs(&r.stated_coefficients),
            quotient_by_square: strs(&r.quotient_by_square),
            counterexample: cx,
            p_mod_3_consequence: r.p_mod_3_consequence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheckOut {
    pub s: String,
    pub t: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl SpotCheckOut {
    pub fn new(s: &SpotCheck) -> Self {
        SpotCheckOut {
            s: s.s.to_string(),
            t: s.t.to_string(),
            lhs: s.lhs.to_string(),
            rhs: s.rhs.to_string(),
            holds: s.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFormOut {
    pub holds: bool,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub spot_check: SpotCheckOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitiesOut {
    pub schema: u32,
    pub p: u64,
    pub residue_signs: Vec<[i8; 3]>,
    pub derived_congruence: bool,
    pub p_identity: PIdentityOut,
    pub quadratic_form: QuadraticFormOut,
    pub all_hold: bool,
}

impl IdentitiesOut {
    pub fn new(r: &ResidueSignProfile, pid: &PIdentityReport, q: &QuadraticFormIdentity, spot: &SpotCheck) -> Self {
        let all = r.admissible_eps == vec![[-1, -1, -1], [1, 1, 1]]
            && r.derived_congruence
            && pid.p_mod_3_consequence
            && !matches!(pid.outcome, VerificationOutcome::FailsWithCounterexample { .. })
            && q.holds
            && spot.holds();
        IdentitiesOut {
            schema: SCHEMA,
            p: r.p,
            residue_signs: r.admissible_eps.clone(),
            derived_congruence: r.derived_congruence,
            p_identity: PIdentityOut::new(pid),
            quadratic_form: QuadraticFormOut {
                holds: q.holds,
                lhs: strs(&q.lhs),
                rhs: strs(&q.rhs),
                spot_check: SpotCheckOut::new(spot),
            },
            all_hold: all,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod3Out {
    pub prime_index: usize,
    pub residue: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentOut {
    pub schema: u32,
    pub field: String,
    pub d: String,
    pub t: u32,
    pub found: bool,
    pub x: Option<String>,
    pub y: Option<String>,
    pub radius: f64,
    pub complete: bool,
    pub mod3_obstruction: Option<Mod3Out>,
}

impl RepresentOut {
    pub fn new(k: &Field, d: &str, t: u32, out: &RepresentationOutcome) -> Self {
        let base = RepresentOut {
            schema: SCHEMA,
            field: k.poly().to_string(),
            d: d.to_string(),
            t,
            found: false,
            x: None,
            y: None,
            radius: 0.0,
            complete: true,
            mod3_obstruction: None,
        };
        match out {
            RepresentationOutcome::Found(r) => RepresentOut {
                found: true,
                x: Some(r.x.to_string()),
                y: Some(r.y.to_string()),
                radius: r.search_radius_used,
                ..base
            },
            RepresentationOutcome::NotFoundWithinBound { radius, complete, obstruction } => RepresentOut {
                radius: *radius,
                complete: *complete,
                mod3_obstruction: obstruction.as_ref().map(|o| Mod3Out { prime_index: o.prime_index, residue: o.residue }),
                ..base
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionOut {
    pub x: String,
    pub y: String,
    pub z: String,
    pub three_divides: bool,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOut {
    pub schema: u32,
    pub field: String,
    pub p: u64,
    pub height: i64,
    pub pairs_scanned: u64,
    pub trivial_count: u64,
    pub nontrivial: Vec<SolutionOut>,
    pub screened: bool,
    pub counterexamples: usize,
}

impl SearchOut {
    pub fn new(k: &Field, r: &FermatSearchReport) -> Self {
        let el = |c: &[num_bigint::BigInt]| flt_core::numfield::AlgebraicNumber::from_int_coords(k, c).to_string();
        SearchOut {
            schema: SCHEMA,
            field: k.poly().to_string(),
            p: r.p,
            height: r.height_bound,
            pairs_scanned: r.pairs_scanned,
            trivial_count: r.trivial_count,
            nontrivial: r
                .nontrivial
                .iter()
                .map(|s| SolutionOut {
                    x: el(&s.x),
                    y: el(&s.y),
                    z: el(&s.z),
                    three_divides: s.three_divides,
                    primitive: s.primitive,
                })
                .collect(),
            screened: r.screened,
            counterexamples: r.counterexamples.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddValuationOut {
    pub q: u64,
    pub prime_index: usize,
    pub e: u32,
    pub f: u32,
    pub v_abc: i64,
    pub v_disc: i64,
    pub divisible_by_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicOut {
    pub prime_index: usize,
    pub v_2: u32,
    pub lower: u32,
    pub upper: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyOut {
    pub schema: u32,
    pub field: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub p: u64,
    pub discriminant: String,
    pub closed_form: String,
    pub matches_closed_form: bool,
    pub is_fermat_solution: bool,
    pub odd_valuations: Vec<OddValuationOut>,
    pub conductor_exponent_bounds: Vec<DyadicOut>,
}

impl FreyOut {
    pub fn new(r: &FreyReport) -> Self {
        FreyOut {
            schema: SCHEMA,
            field: r.a.field().poly().to_string(),
            a: r.a.to_string(),
            b: r.b.to_string(),
            c: r.c.to_string(),
            p: r.p,
            discriminant: r.discriminant.to_string(),
            closed_form: r.closed_form.to_string(),
            matches_closed_form: r.matches_closed_form(),
            is_fermat_solution: r.is_fermat_solution,
            odd_valuations: r
                .odd_valuations
                .iter()
                .map(|v| OddValuationOut {
                    q: v.q,
                    prime_index: v.prime_index,
                    e: v.e,
                    f: v.f,
                    v_abc: v.v_abc,
                    v_disc: v.v_disc,
                    divisible_by_p: v.divisible_by_p,
                })
                .collect(),
            conductor_exponent_bounds: r
                .conductor_exponent_bounds
                .iter()
                .map(|d| DyadicOut { prime_index: d.prime_index, v_2: d.v_2, lower: d.lower, upper: d.upper })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergOut {
    pub schema: u32,
    pub f: u32,
    pub congruence_square: String,
    pub hasse_square: String,
    pub excluded: bool,
    pub margin: String,
}

impl SteinbergOut {
    pub fn new(s: &SteinbergExclusion) -> Self {
        SteinbergOut {
            schema: SCHEMA,
            f: s.f,
            congruence_square: s.congruence_square.to_string(),
            hasse_square: s.hasse_square.to_string(),
            excluded: s.excluded,
            margin: s.margin.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenOut {
    pub schema: u32,
    pub min_poly: String,
    pub f: u32,
    pub norm_minus: String,
    pub norm_plus: String,
    pub primes: Vec<String>,
    pub surviving_exponents: Vec<String>,
    pub hasse_warning: Option<String>,
}

impl EigenOut {
    pub fn new(poly: &str, e: &EigenvalueBound) -> Self {
        EigenOut {
            schema: SCHEMA,
            min_poly: poly.to_string(),
            f: e.f,
            norm_minus: e.norm_minus.to_string(),
            norm_plus: e.norm_plus.to_string(),
            primes: strs(&e.primes),
            surviving_exponents: strs(&e.surviving_exponents()),
            hasse_warning: e.hasse_warning.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContradictionOut {
    pub schema: u32,
    pub p: u64,
    pub t: u32,
    pub contradiction: bool,
}

pub fn mode_label(m: Certification) -> String {
    m.label().to_string()
}
