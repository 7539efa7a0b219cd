use super::*;
use crate::exactmath::poly::BigIntPoly;
use crate::numfield::build_field;

fn field(c: &[i64]) -> Field {
    build_field(&BigIntPoly::from_i64(c)).unwrap()
}

#[test]
fn assumption_examples() {
    let r = check_assumption(&field(&[-1, -3, 0, 1]));
    assert_eq!(r.verdict, Verdict::Satisfied);
    assert_eq!(r.t, Some(1));
    assert_eq!(r.t3.len(), 1);
    assert_eq!(r.v3.len(), 1);
    let r = check_assumption(&field(&[-13, 0, 1]));
    assert_eq!(r.verdict, Verdict::Fails(FailReason::ClassNumberEven));
    let r = check_assumption(&field(&[-2, 0, 1]));
    assert_eq!(r.verdict, Verdict::Fails(FailReason::T3Empty));
    let r = check_assumption(&field(&[1, 0, 1]));
    assert_eq!(r.verdict, Verdict::Fails(FailReason::NotTotallyReal));
}

#[test]
fn patterns() {
    assert_eq!(classify_ramification_pattern(&field(&[-1, -3, 0, 1])).unwrap(), RamificationPattern::TotallyRamifiedOddDegree);
    let p = classify_ramification_pattern(&field(&[1, -4, -1, 1])).unwrap();
    assert_eq!(p, RamificationPattern::MixedOddPlusEvenSquares);
    assert!(!p.galois_compatible());
    assert_eq!(classify_ramification_pattern(&field(&[-2, 0, 1])).unwrap(), RamificationPattern::Fails);
    assert_eq!(splitting_label(&[(3, 1)]), "p^3");
    assert_eq!(splitting_label(&[(2, 1), (1, 1)]), "p1 p2^2");
}

#[test]
fn obstruction_examples() {
    let o = ambiguous_parity_obstruction(&field(&[-13, 0, 1]), 3).unwrap();
    assert_eq!(o.verdict, ObstructionVerdict::ForcesEvenClassNumber);
    assert!(o.gamma >= 2);
    let o = ambiguous_parity_obstruction(&field(&[0, 1]), 3).unwrap();
    assert_eq!((o.gamma, o.verdict), (1, ObstructionVerdict::Inconclusive));
    let o = ambiguous_parity_obstruction(&field(&[-1, -3, 0, 1]), 3).unwrap();
    assert_eq!((o.gamma, o.verdict), (1, ObstructionVerdict::Inconclusive));
    assert_eq!(o.ambiguous_lower_bound_2exp, 0);
    assert!(ambiguous_parity_obstruction(&field(&[0, 1]), 2).is_err());
}

#[test]
fn cyclotomic_polys() {
    assert_eq!(cyclotomic_real_subfield_poly(1), BigIntPoly::from_i64(&[-1, 1]));
    assert_eq!(cyclotomic_real_subfield_poly(2), BigIntPoly::from_i64(&[-1, -3, 0, 1]));
    assert_eq!(cyclotomic_real_subfield_poly(3).degree(), Some(9));
}

#[test]
fn cyclotomic_levels() {
    let (_, r) = cyclotomic_real_subfield(1).unwrap();
    assert!(r.assumption_holds());
    let (k, r) = cyclotomic_real_subfield(2).unwrap();
    assert_eq!(k.disc(), &81.into());
    assert!(r.two_inert && r.three_totally_ramified && r.stv_singleton);
    assert_eq!(r.parity, ParityEvidence::Computed(1));
    assert_eq!(r.assumption.as_ref().unwrap().verdict, Verdict::Satisfied);
    assert!(matches!(cyclotomic_real_subfield(4), Err(Error::Cap { .. })));
}

#[test]
fn unit_equation_contrast() {
    let r = sunit_contrast_report(2).unwrap();
    let (l, m) = r.solution.clone().unwrap();
    assert!((&l + &m).is_one());
    assert_eq!(r.valuation_lambda_mu, Some(0));
    assert!(r.t2_empty);
    let r = sunit_contrast_report(1).unwrap();
    assert!(r.solution.is_none());
}

#[test]
fn small_cubic_tables() {
    let rows = enumerate_totally_real_cubics(100, Certification::Unconditional).unwrap();
    let sat: Vec<_> = rows.iter().filter(|r| r.report.verdict == Verdict::Satisfied).collect();
    assert_eq!(sat.len(), 1);
    assert_eq!(sat[0].field.disc(), &81.into());
    let rows = enumerate_totally_real_cubics(600, Certification::Unconditional).unwrap();
    let discs: Vec<String> = rows
        .iter()
        .filter(|r| r.report.verdict == Verdict::Satisfied)
        .map(|r| r.field.disc().to_string())
        .collect();
    assert_eq!(discs, ["81", "321", "564"]);
}
