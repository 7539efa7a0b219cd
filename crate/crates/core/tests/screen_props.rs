use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use flt_core::classunit::{class_number, class_unit_data, Certification, ClassUnitOptions, Principality};
use flt_core::exactmath::poly::{parse_poly, BigIntPoly};
use flt_core::fltscreen::{
    ambiguous_parity_obstruction, check_assumption, classify_ramification_pattern, enumerate_totally_real_cubics,
    FailReason, ObstructionVerdict, RamificationPattern, Verdict,
};
use flt_core::idealarith::IntegralIdeal;
use flt_core::numfield::{adjoin_sqrt_minus3, build_field, is_isomorphic, AlgebraicNumber, Field};
use flt_core::pomeyfrey as pf;

fn field(s: &str) -> Field {
    build_field(&parse_poly(s).unwrap()).unwrap()
}

fn squarefree(d: i64) -> bool {
    let d = d.abs();
    d > 1 && (2..=d).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

const LISTED: [&str; 12] = [
    "x^3-3x-1", "x^3-x^2-4x+1", "x^3-x^2-5x+3", "x^3-6x-3", "x^3-6x-2", "x^3-6x-1", "x^3-x^2-6x+3",
    "x^3-x^2-9x+12", "x^3-x^2-8x-3", "x^3-x^2-7x+1", "x^3-12x-14", "x^3-9x-6",
];

/// Checks shared by every computed class/unit record.
fn check_class_unit(k: &Field) {
    let d = class_number(k, Certification::Unconditional).unwrap();
    let (r, s) = k.signature();
    assert_eq!(d.class_invariants.iter().product::<u64>().max(1), d.h);
    assert_eq!(d.fundamental_units.len(), r + s - 1);
    for u in &d.fundamental_units {
        assert!(u.is_integral() && u.norm().abs().is_one());
    }
    if s == 0 {
        assert_eq!(d.h_plus << d.unit_index_2exp, d.h << r);
        // sign-map rank against the totally positive units actually seen
        let tp_squares = d
            .small_units(2)
            .iter()
            .filter(|u| u.is_totally_positive().unwrap())
            .all(|u| u.sqrt().unwrap().is_some());
        assert_eq!(d.totally_positive_units_are_squares(), tp_squares, "{}", k.poly());
        if d.h % 2 == 1 {
            assert_eq!(d.h_plus % 2 == 1, d.unit_index_2exp as usize == r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn real_quadratic_class_unit_invariants(d in 2i64..80) {
        prop_assume!(squarefree(d));
        check_class_unit(&field(&format!("x^2-{d}")));
    }

    #[test]
    fn imaginary_quadratic_class_unit_invariants(d in 1i64..120) {
        prop_assume!(squarefree(d) || d == 1);
        check_class_unit(&field(&format!("x^2+{d}")));
    }

    #[test]
    fn class_number_stable_under_doubling(d in 2i64..200) {
        prop_assume!(squarefree(d));
        for s in [format!("x^2-{d}"), format!("x^2+{d}")] {
            let k = field(&s);
            let a = class_unit_data(&k, &ClassUnitOptions::default()).unwrap();
            let b = class_unit_data(&k, &ClassUnitOptions { bound_scale: 2, ..Default::default() }).unwrap();
            prop_assert_eq!(a.h, b.h);
            prop_assert_eq!(a.class_invariants, b.class_invariants);
            prop_assert!((a.regulator - b.regulator).abs() < 1e-6 * a.regulator.max(1.0));
        }
    }

    #[test]
    fn principal_generators_generate(d in 1i64..60, a in -12i64..12, b in -12i64..12) {
        prop_assume!(squarefree(d) && (a, b) != (0, 0));
        let k = field(&format!("x^2+{d}"));
        let alpha = AlgebraicNumber::from_int_coords(&k, &[BigInt::from(a), BigInt::from(b)]);
        prop_assume!(alpha.is_integral());
        let ideal = IntegralIdeal::principal(&alpha).unwrap();
        let data = class_number(&k, Certification::Unconditional).unwrap();
        match data.is_principal(&ideal) {
            Principality::Principal(g) => prop_assert_eq!(IntegralIdeal::principal(&g).unwrap(), ideal),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn satisfied_implies_conditions(b in -12i64..12, c in -12i64..12) {
        let Ok(k) = build_field(&BigIntPoly::from_i64(&[c, b, 0, 1])) else { return Ok(()) };
        let rep = check_assumption(&k);
        if rep.verdict == Verdict::Satisfied {
            prop_assert!(rep.t3_nonempty && rep.v3_nonempty && rep.t_odd == Some(true));
            prop_assert_eq!(rep.v3.len(), 1);
            let pat = classify_ramification_pattern(&k).unwrap();
            prop_assert!(pat != RamificationPattern::Fails);
            // cyclic cubics have square discriminant and must be totally ramified at 3
            let sq = flt_core::exactmath::intfactor::is_square(k.disc());
            if sq {
                prop_assert_eq!(pat, RamificationPattern::TotallyRamifiedOddDegree);
            }
        }
        if !k.is_totally_real() {
            prop_assert_eq!(rep.verdict, Verdict::Fails(FailReason::NotTotallyReal));
        }
    }

    #[test]
    fn quadratic_form_identity_numeric(s in -10i64.pow(9)..10i64.pow(9), t in -10i64.pow(9)..10i64.pow(9)) {
        let (s, t) = (BigInt::from(s), BigInt::from(t));
        let u = &s + &t;
        let v = &s - &t;
        prop_assert_eq!(4 * (&u * &u - &s * &t), 3 * &u * &u + &v * &v);
    }

    #[test]
    fn quadratic_form_spot_checks(p in prop::sample::select(vec![3u32, 5, 7, 11, 13]), xj in -50i64..50, xk in -50i64..50) {
        prop_assert!(pf::quadratic_form_spot_check(p, &xj.into(), &xk.into()).holds());
    }

    #[test]
    fn representations_verify_exactly(x in -6i64..6, xs in -4i64..4, y in -4i64..4, ys in -3i64..3, t in 1u32..3) {
        // d = x^2 + 3 y^2 in Q(sqrt 2) is totally positive when nonzero
        let k = field("x^2-2");
        let xe = AlgebraicNumber::from_int_coords(&k, &[x.into(), xs.into()]);
        let ye = AlgebraicNumber::from_int_coords(&k, &[y.into(), ys.into()]);
        let d = &(&xe * &xe) + &(&AlgebraicNumber::from_i64(&k, 3) * &(&ye * &ye));
        prop_assume!(!d.is_zero());
        match pf::find_x2_3y2_representation(&k, &d, t, 2_000_000).unwrap() {
            pf::RepresentationOutcome::Found(r) => {
                prop_assert!(r.verify());
                let three = AlgebraicNumber::from_i64(&k, 3);
                prop_assert_eq!(&(&r.x * &r.x) + &(&three * &(&r.y * &r.y)), d.pow(u64::from(t)));
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn frey_discriminant_closed_form(a in 1i64..30, b in 1i64..30, c in -30i64..30, pi in 0usize..3) {
        prop_assume!(c != 0);
        let p = [3u64, 5, 7][pi];
        let k = field("x");
        let n = |v: i64| AlgebraicNumber::from_i64(&k, v);
        let r = pf::frey_invariants(&n(a), &n(b), &n(c), p).unwrap();
        let (aa, bb) = (BigInt::from(a).pow(p as u32), BigInt::from(b).pow(p as u32));
        let expect: BigInt = 16 * (&aa * &bb * (&aa + &bb)).pow(2);
        prop_assert_eq!(r.discriminant, AlgebraicNumber::from_rational(&k, BigRational::from_integer(expect)));
        prop_assert_eq!(r.is_fermat_solution, BigInt::from(c).pow(p as u32) == -(&aa + &bb));
    }
}

#[test]
fn listed_fields_satisfy_and_narrow_class_number_is_one() {
    for s in LISTED {
        let k = field(s);
        let rep = check_assumption(&k);
        assert_eq!(rep.verdict, Verdict::Satisfied, "{s}");
        assert_eq!(rep.t, Some(1));
        let d = class_number(&k, Certification::Unconditional).unwrap();
        assert_eq!(rep.t.unwrap() % d.h, 0);
        assert_eq!(d.h_plus, 1, "{s}");
        check_class_unit(&k);
    }
}

#[test]
fn parity_obstruction_is_sound() {
    for d in [7i64, 13] {
        let k = field(&format!("x^2-{d}"));
        let ob = ambiguous_parity_obstruction(&k, 3).unwrap();
        assert_eq!(ob.verdict, ObstructionVerdict::ForcesEvenClassNumber);
        assert!(ob.gamma >= 2);
        let top = adjoin_sqrt_minus3(&k).unwrap();
        let h = class_number(top.top(), Certification::Unconditional).unwrap().h;
        assert_eq!(h % 2, 0, "d = {d}");
    }
}

#[test]
fn enumeration_is_monotone() {
    let small = enumerate_totally_real_cubics(400, Certification::Unconditional).unwrap();
    let large = enumerate_totally_real_cubics(800, Certification::Unconditional).unwrap();
    let discs: HashSet<BigInt> = large.iter().map(|s| s.field.disc().clone()).collect();
    for s in &small {
        assert!(discs.contains(s.field.disc()));
        assert!(large.iter().any(|l| l.field.disc() == s.field.disc() && is_isomorphic(&l.field, &s.field)));
    }
    assert!(small.len() < large.len());
    assert!(large.iter().all(|s| s.field.disc() <= &BigInt::from(800) && s.field.is_totally_real()));
    assert!(!large.iter().any(|s| s.field.disc().is_zero()));
}
