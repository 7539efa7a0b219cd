use super::*;
use crate::exactmath::poly::BigIntPoly;
use crate::idealarith::factor_rational_prime;
use crate::numfield::build_field;

fn field(c: &[i64]) -> Field {
    build_field(&BigIntPoly::from_i64(c)).unwrap()
}

fn approx(x: &BigRational) -> f64 {
    crate::exactmath::poly::rat_to_f64(x)
}

#[test]
fn minkowski_examples() {
    let b = approx(&minkowski_bound(&field(&[1, -1, 1])));
    assert!(b > 1.0 && b < 2.0, "{b}");
    let b = approx(&minkowski_bound(&field(&[1, 0, 0, 1, 0, 0, 1])));
    assert!(b > 4.0 && b < 5.0, "{b}");
    assert!(minkowski_bound(&field(&[0, 1])).is_one());
}

#[test]
fn class_numbers() {
    assert_eq!(class_number(&field(&[1, -1, 1]), Certification::Unconditional).unwrap().h, 1);
    assert_eq!(class_number(&field(&[-1, -3, 0, 1]), Certification::Unconditional).unwrap().h, 1);
    let d = class_number(&field(&[5, 0, 1]), Certification::Unconditional).unwrap();
    assert_eq!(d.h, 2);
    assert_eq!(d.class_invariants, vec![2]);
    let d = class_number(&field(&[23, 0, 1]), Certification::Unconditional).unwrap();
    assert_eq!(d.h, 3);
    let d = class_number(&field(&[-1, -1, 0, 1]), Certification::Unconditional).unwrap();
    assert_eq!(d.h, 1);
    assert_eq!(d.unit_rank(), 1);
}

#[test]
fn units_of_quadratic_fields() {
    let d = unit_group(&field(&[-2, 0, 1])).unwrap();
    assert_eq!(d.fundamental_units.len(), 1);
    let u = &d.fundamental_units[0];
    assert_eq!(u.int_coords().unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
    assert_eq!(u.norm(), BigRational::from_integer(BigInt::from(-1)));
    let d = unit_group(&field(&[1, -1, 1])).unwrap();
    assert_eq!(d.unit_rank(), 0);
    assert_eq!(d.torsion_order, 6);
    let d = unit_group(&field(&[0, 1])).unwrap();
    assert_eq!(d.unit_rank(), 0);
    assert_eq!(d.torsion_order, 2);
}

#[test]
fn large_fundamental_units() {
    // regulators: log(170 + 39 sqrt 19), log(1520 + 273 sqrt 31)
    for (d, reg) in [(19i64, (170.0 + 39.0 * 19f64.sqrt()).ln()), (31, (1520.0 + 273.0 * 31f64.sqrt()).ln())] {
        let k = field(&[-d, 0, 1]);
        let data = unit_group(&k).unwrap();
        assert!((data.regulator - reg).abs() < 1e-6, "d={d}: {}", data.regulator);
    }
}

#[test]
fn narrow_examples() {
    assert_eq!(narrow_class_number(&field(&[-2, 0, 1])).unwrap().0, 1);
    assert_eq!(narrow_class_number(&field(&[-3, 0, 1])).unwrap().0, 2);
    assert_eq!(narrow_class_number(&field(&[0, 1])).unwrap().0, 1);
    let d = unit_group(&field(&[-3, 0, 1])).unwrap();
    assert!(!d.totally_positive_units_are_squares());
}

#[test]
fn principality_examples() {
    let k = field(&[1, -1, 1]);
    let data = class_number(&k, Certification::Unconditional).unwrap();
    let seven = IntegralIdeal::from_integer(&k, &BigInt::from(7)).unwrap();
    match data.is_principal(&seven) {
        Principality::Principal(g) => assert_eq!(IntegralIdeal::principal(&g).unwrap(), seven),
        other => panic!("{other:?}"),
    }
    let p7 = factor_rational_prime(&k, 7).unwrap().factors[0].ideal().clone();
    match data.is_principal(&p7) {
        Principality::Principal(g) => assert_eq!(g.norm().abs(), BigRational::from_integer(BigInt::from(7))),
        other => panic!("{other:?}"),
    }
    let k = field(&[5, 0, 1]);
    let data = class_number(&k, Certification::Unconditional).unwrap();
    let p2 = factor_rational_prime(&k, 2).unwrap().factors[0].ideal().clone();
    assert!(matches!(data.is_principal(&p2), Principality::NotPrincipal));
    assert!(matches!(data.is_principal(&p2.pow(2)), Principality::Principal(_)));
    assert!(matches!(data.is_principal(&IntegralIdeal::unit_ideal(&k)), Principality::Principal(_)));
}

#[test]
fn cyclotomic_nine_sextic() {
    let k = field(&[1, 0, 0, 1, 0, 0, 1]);
    let d = class_number(&k, Certification::Unconditional).unwrap();
    assert_eq!(d.h, 1);
    assert_eq!(d.torsion_order, 18);
    assert_eq!(d.unit_rank(), 2);
}
