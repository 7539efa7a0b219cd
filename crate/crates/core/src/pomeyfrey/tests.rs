use num_bigint::BigInt;

use super::*;
use crate::exactmath::poly::BigIntPoly;
use crate::numfield::{build_field, AlgebraicNumber};

fn q_field() -> crate::numfield::Field {
    build_field(&BigIntPoly::from_i64(&[0, 1])).unwrap()
}

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn residue_signs_match_brute_force() {
    for p in [3u64, 5, 7, 11, 13, 97] {
        let prof = residue_sign_analysis(p).unwrap();
        assert_eq!(prof.admissible_eps, vec![[-1, -1, -1], [1, 1, 1]]);
        assert!(prof.derived_congruence);
        // integers prime to 3 in [-4, 4]
        let xs = [-4i64, -2, -1, 1, 2, 4];
        for &x in &xs {
            for &y in &xs {
                for &z in &xs {
                    let s: i64 = [x, y, z].iter().map(|&t| (0..p).fold(1i64, |a, _| a * t.rem_euclid(3) % 3)).sum();
                    let same = x.rem_euclid(3) == y.rem_euclid(3) && y.rem_euclid(3) == z.rem_euclid(3);
                    assert_eq!(s % 3 == 0, same, "p={p} ({x},{y},{z})");
                }
            }
        }
    }
    assert!(residue_sign_analysis(2).is_err());
    assert!(residue_sign_analysis(9).is_err());
}

#[test]
fn p_identity_small_cases() {
    let r3 = verify_p_identity(3).unwrap();
    assert_eq!(r3.outcome, VerificationOutcome::Holds);
    assert_eq!(r3.quotient_by_square, vec![b(1)]);

    let r5 = verify_p_identity(5).unwrap();
    match &r5.outcome {
        VerificationOutcome::HoldsWithAdjustedRange(a) => {
            assert_eq!(a.r_max, 3);
            assert_eq!(a.factor_power, 1);
            assert_eq!(a.coefficients, vec![b(1), b(2), b(-2), b(-1)]);
        }
        o => panic!("{o:?}"),
    }
    // u^4+u^3v+u^2v^2+uv^3+v^4 - 5u^2v^2 = (u^2+3uv+v^2)(u-v)^2
    assert_eq!(r5.quotient_by_square, vec![b(1), b(3), b(1)]);

    let r7 = verify_p_identity(7).unwrap();
    match &r7.outcome {
        VerificationOutcome::HoldsWithAdjustedRange(a) => {
            assert_eq!(a.coefficients, [1, 2, 3, -3, -2, -1].map(b).to_vec());
        }
        o => panic!("{o:?}"),
    }
    assert!(verify_p_identity(33).is_err());
    assert!(verify_p_identity(4).is_err());
}

#[test]
fn p_identity_adjusted_form_evaluates() {
    // direct evaluation of P and p(uv)^k + m (u - v) with the reported m
    for p in (5u64..=31).step_by(2) {
        let rep = verify_p_identity(p).unwrap();
        assert!(rep.p_mod_3_consequence, "p={p}");
        let coeffs = match rep.outcome {
            VerificationOutcome::HoldsWithAdjustedRange(a) => a.coefficients,
            o => panic!("p={p}: {o:?}"),
        };
        for (u, v) in [(2i64, 1i64), (-3, 5), (7, 7), (4, -1)] {
            let (ub, vb) = (b(u), b(v));
            let pv: BigInt = (0..p).map(|r| ub.pow((p - 1 - r) as u32) * vb.pow(r as u32)).sum();
            let m: BigInt = coeffs
                .iter()
                .enumerate()
                .map(|(r, c)| c * ub.pow((p as usize - 2 - r) as u32) * vb.pow(r as u32))
                .sum();
            let rhs = BigInt::from(p) * (&ub * &vb).pow(((p - 1) / 2) as u32) + m * (&ub - &vb);
            assert_eq!(pv, rhs, "p={p} u={u} v={v}");
        }
    }
}

#[test]
fn quadratic_form_identity() {
    let q = verify_quadratic_form_identity();
    assert!(q.holds);
    assert_eq!(q.lhs, vec![b(4), b(4), b(4)]);
    let s = quadratic_form_spot_check(5, &b(2), &b(3));
    assert_eq!(s.s, b(32));
    assert_eq!(s.t, b(243));
    assert_eq!(s.lhs, b(4 * (1024 + 7776 + 59049)));
    assert_eq!(s.lhs, b(271_396));
    assert!(s.holds());
    let e = quadratic_form_spot_check(3, &b(5), &b(5));
    assert_eq!(e.lhs, b(12) * b(125).pow(2));
    assert!(e.holds());
}

#[test]
fn contradiction_check() {
    assert_eq!(pomey_contradiction_check(5, 1), PomeyContradiction::ContradictionHolds);
    assert_eq!(pomey_contradiction_check(7, 1), PomeyContradiction::NoObstruction);
    assert_eq!(pomey_contradiction_check(5, 2), PomeyContradiction::NoObstruction);
    assert_eq!(pomey_contradiction_check(11, 3), PomeyContradiction::ContradictionHolds);
    assert_eq!(pomey_contradiction_check(3, 1), PomeyContradiction::NoObstruction);
}

fn found_pair(out: RepresentationOutcome) -> (BigInt, BigInt) {
    match out {
        RepresentationOutcome::Found(r) => {
            assert!(r.verify());
            (r.x.int_coords().unwrap()[0].clone(), r.y.int_coords().unwrap()[0].clone())
        }
        o => panic!("{o:?}"),
    }
}

#[test]
fn representations_over_q() {
    let q = q_field();
    let d = |v: i64| AlgebraicNumber::from_i64(&q, v);
    assert_eq!(found_pair(find_x2_3y2_representation(&q, &d(7), 1, 100_000).unwrap()), (b(2), b(1)));
    assert_eq!(found_pair(find_x2_3y2_representation(&q, &d(13), 1, 100_000).unwrap()), (b(1), b(2)));
    for t in 1..4 {
        assert_eq!(found_pair(find_x2_3y2_representation(&q, &d(1), t, 100_000).unwrap()), (b(1), b(0)));
    }
    match find_x2_3y2_representation(&q, &d(5), 1, 100_000).unwrap() {
        RepresentationOutcome::NotFoundWithinBound { complete, obstruction, .. } => {
            assert!(complete);
            assert_eq!(obstruction.unwrap().residue, 2);
        }
        o => panic!("{o:?}"),
    }
    // 5^2 = 25 = 5^2 + 3*0^2
    assert_eq!(found_pair(find_x2_3y2_representation(&q, &d(5), 2, 100_000).unwrap()), (b(5), b(0)));
    assert!(find_x2_3y2_representation(&q, &d(-7), 1, 100).is_err());
    assert!(find_x2_3y2_representation(&q, &d(7), 0, 100).is_err());
}

#[test]
fn representation_primes_against_brute_force() {
    let q = q_field();
    for n in 2i64..200 {
        if !crate::exactmath::intfactor::is_prime_u64(n as u64) {
            continue;
        }
        let brute = (0..=n).any(|y| {
            let r = n - 3 * y * y;
            r >= 0 && (r as f64).sqrt().round().powi(2) as i64 == r
        });
        let out = find_x2_3y2_representation(&q, &AlgebraicNumber::from_i64(&q, n), 1, 1_000_000).unwrap();
        assert_eq!(matches!(out, RepresentationOutcome::Found(_)), brute, "q={n}");
        if n % 3 == 2 {
            match out {
                RepresentationOutcome::NotFoundWithinBound { obstruction, complete, .. } => {
                    assert!(complete && obstruction.is_some())
                }
                _ => panic!("q={n}"),
            }
        }
    }
}

#[test]
fn representation_in_real_quadratic_and_cubic() {
    let k = build_field(&BigIntPoly::from_i64(&[-2, 0, 1])).unwrap();
    let sqrt2 = AlgebraicNumber::theta(&k);
    // 7 + 2 sqrt2 is totally positive; search its square
    let d = &AlgebraicNumber::from_i64(&k, 7) + &(&AlgebraicNumber::from_i64(&k, 2) * &sqrt2);
    if let RepresentationOutcome::Found(r) = find_x2_3y2_representation(&k, &d, 2, 1_000_000).unwrap() {
        assert!(r.verify());
    }
    let c = build_field(&BigIntPoly::from_i64(&[1, -3, 0, 1])).unwrap();
    let seven = AlgebraicNumber::from_i64(&c, 7);
    match find_x2_3y2_representation(&c, &seven, 1, 1_000_000).unwrap() {
        RepresentationOutcome::Found(r) => assert!(r.verify()),
        o => panic!("{o:?}"),
    }
}

#[test]
fn fermat_search_over_q_is_trivial() {
    let q = q_field();
    let rep = exhaustive_fermat_search(&q, 5, 20).unwrap();
    assert!(rep.nontrivial.is_empty());
    assert!(rep.screened);
    // (a, -a, 0) in each of three slots for a != 0, plus (0, 0, 0)
    assert_eq!(rep.trivial_count, 3 * 40 + 1);
    let rep3 = exhaustive_fermat_search(&q, 3, 6).unwrap();
    assert!(rep3.nontrivial.is_empty());
    assert!(!rep3.screened);
}

#[test]
fn fermat_search_unscreened_quadratic() {
    let k = build_field(&BigIntPoly::from_i64(&[-2, 0, 1])).unwrap();
    let rep = exhaustive_fermat_search(&k, 5, 5).unwrap();
    assert!(rep.nontrivial.is_empty());
    assert!(!rep.screened);
    // odd p: x^p = -y^p forces y = -x in a real field
    let points = 11u64 * 11;
    assert_eq!(rep.trivial_count, 3 * (points - 1) + 1);
}

#[test]
fn fermat_search_cap() {
    let c = build_field(&BigIntPoly::from_i64(&[1, -3, 0, 1])).unwrap();
    assert!(matches!(exhaustive_fermat_search(&c, 5, 40), Err(crate::Error::Cap { .. })));
}

#[test]
fn classify_trivial_triple() {
    let k = build_field(&BigIntPoly::from_i64(&[1, -3, 0, 1])).unwrap();
    let one = k.one_coords();
    let neg: Vec<BigInt> = one.iter().map(|x| -x).collect();
    let zero = vec![b(0); 3];
    let s = classify_triple(&k, &one, &neg, &zero).unwrap();
    assert!(s.trivial && s.three_divides && s.primitive);
    let three: Vec<BigInt> = one.iter().map(|x| x * 3).collect();
    let s = classify_triple(&k, &three, &three, &three).unwrap();
    assert!(!s.trivial && s.three_divides && !s.primitive);
}

#[test]
fn frey_discriminants() {
    let q = q_field();
    let n = |v: i64| AlgebraicNumber::from_i64(&q, v);
    let r = frey_invariants(&n(2), &n(1), &n(1), 5).unwrap();
    assert_eq!(r.discriminant, n(16 * 1056 * 1056));
    assert_eq!(r.discriminant, n(17_842_176));
    assert!(!r.is_fermat_solution);
    let r = frey_invariants(&n(1), &n(1), &n(1), 5).unwrap();
    assert_eq!(r.discriminant, n(64));
    assert_eq!(r.conductor_exponent_bounds, vec![DyadicBound { prime_index: 0, v_2: 1, lower: 0, upper: 8 }]);
    assert!(frey_invariants(&n(0), &n(1), &n(1), 5).is_err());
}

#[test]
fn frey_on_formal_solution() {
    // 1 + 2^3 + c^3 = 0 with c = -cbrt(9)
    let k = build_field(&BigIntPoly::from_i64(&[-9, 0, 0, 1])).unwrap();
    let c = -&AlgebraicNumber::theta(&k);
    let one = AlgebraicNumber::one(&k);
    let two = AlgebraicNumber::from_i64(&k, 2);
    let r = frey_invariants(&one, &two, &c, 3).unwrap();
    assert!(r.is_fermat_solution);
    assert!(r.matches_closed_form());
    // 16 * (2 cbrt 9)^6 = 16 * 64 * 81
    assert_eq!(r.discriminant, AlgebraicNumber::from_i64(&k, 16 * 64 * 81));
    assert!(!r.odd_valuations.is_empty());
    for v in &r.odd_valuations {
        assert_eq!(v.q, 3);
        assert_eq!(v.v_disc, 6 * v.v_abc);
        assert!(v.divisible_by_p);
    }
}

#[test]
fn steinberg_margins() {
    for f in 1..=30u32 {
        let s = steinberg_exclusion(f).unwrap();
        assert!(s.excluded);
        assert_eq!(s.margin, (BigInt::from(3).pow(f) - 1u32).pow(2));
    }
    let s1 = steinberg_exclusion(1).unwrap();
    assert_eq!((s1.congruence_square, s1.hasse_square, s1.margin), (b(16), b(12), b(4)));
    let s2 = steinberg_exclusion(2).unwrap();
    assert_eq!((s2.congruence_square, s2.hasse_square, s2.margin), (b(100), b(36), b(64)));
    assert_eq!(steinberg_exclusion(3).unwrap().margin, b(676));
    assert!(steinberg_exclusion(0).is_err());
}

#[test]
fn eigenvalue_bounds() {
    let x = BigIntPoly::from_i64(&[0, 1]);
    let e = eigenvalue_prime_bound(&x, 1).unwrap();
    assert_eq!(e.primes, vec![b(2)]);
    assert!(e.surviving_exponents().is_empty());
    assert!(e.hasse_warning.is_none());
    let e = eigenvalue_prime_bound(&BigIntPoly::from_i64(&[-2, 1]), 1).unwrap();
    assert_eq!(e.primes, vec![b(2), b(3)]);
    let e = eigenvalue_prime_bound(&BigIntPoly::from_i64(&[-2, 0, 1]), 1).unwrap();
    assert_eq!(e.primes, vec![b(2), b(7)]);
    assert_eq!((e.norm_minus.clone(), e.norm_plus.clone()), (b(14), b(14)));
    assert!(eigenvalue_prime_bound(&BigIntPoly::from_i64(&[-4, 1]), 1).is_err());
    let far = eigenvalue_prime_bound(&BigIntPoly::from_i64(&[-100, 1]), 1).unwrap();
    assert!(far.hasse_warning.is_some());
}
