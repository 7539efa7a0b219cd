use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use flt_core::exactmath::lattice::enumerate_short_vectors;
use flt_core::exactmath::matrix::{det_bareiss, hnf, rat_inverse, IntegerMatrix};
use flt_core::exactmath::modp::{factor_mod_p, FpPoly};
use flt_core::exactmath::poly::{parse_poly, rat_to_f64, BigIntPoly};
use flt_core::exactmath::roots::{count_real_roots, isolate_real_roots};
use flt_core::idealarith::{factor_rational_prime, IntegralIdeal};
use flt_core::numfield::{adjoin_sqrt_minus3, build_field, AlgebraicNumber, Field};

fn poly(max_deg: usize) -> impl Strategy<Value = BigIntPoly> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![Just(1i64), -3i64..=3])
            .prop_map(|(mut c, lead)| {
                c.push(if lead == 0 { 1 } else { lead });
                BigIntPoly::from_i64(&c)
            })
    })
}

fn monic(deg: usize, r: i64) -> impl Strategy<Value = BigIntPoly> {
    prop::collection::vec(-r..=r, deg).prop_map(|mut c| {
        c.push(1);
        BigIntPoly::from_i64(&c)
    })
}

fn field_of(f: &BigIntPoly) -> Option<Field> {
    build_field(f).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_of_product(f in poly(4), g in poly(4)) {
        let fg = &f * &g;
        let lhs = fg.discriminant().unwrap();
        let r = f.resultant(&g);
        prop_assert_eq!(lhs, f.discriminant().unwrap() * g.discriminant().unwrap() * &r * &r);
    }

    #[test]
    fn factor_mod_p_remultiplies(f in monic(6, 20).prop_filter("nonconstant", |f| f.degree() > Some(0)),
                                 pi in 0usize..15) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47][pi];
        let fp = FpPoly::from_poly(&f, p);
        let fac = factor_mod_p(&f, p).unwrap();
        let mut prod = FpPoly::one(p);
        for (g, e) in &fac {
            prop_assert!(flt_core::exactmath::modp::is_irreducible_fp(g));
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, fp.monic());
    }

    #[test]
    fn isolated_roots_match_sturm_count(f in poly(6).prop_filter("squarefree", |f| f.is_squarefree())) {
        let ivs = isolate_real_roots(&f).unwrap();
        prop_assert_eq!(ivs.len(), count_real_roots(&f));
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
    }

    #[test]
    fn hnf_is_unimodular_and_idempotent(rows in prop::collection::vec(prop::collection::vec(-20i64..20, 3), 1..5)) {
        let m = IntegerMatrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), 3);
        let (h, u) = hnf(&m);
        prop_assert!(h.is_hnf());
        prop_assert_eq!(&u.mul(&m), &h);
        prop_assert!(det_bareiss(u.rows()).abs().is_one());
        let (h2, _) = hnf(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn short_vectors_match_box_scan(a in 1i64..6, b in -3i64..4, c in 1i64..6, d in 1i64..4, bound in 1i64..25) {
        // positive definite 2x2 and 3x3 Gram matrices
        prop_assume!(a * c > b * b);
        let r = |x: i64| BigRational::from_integer(x.into());
        let g2 = vec![vec![r(a), r(b)], vec![r(b), r(c)]];
        let g3 = vec![vec![r(a), r(b), r(0)], vec![r(b), r(c), r(1)], vec![r(0), r(1), r(d + 1)]];
        for g in [g2, g3] {
            let n = g.len();
            let Ok(found) = enumerate_short_vectors(&g, &r(bound)) else { continue };
            let mut brute = Vec::new();
            // |v_i| <= sqrt(bound * (G^-1)_ii)
            let inv = rat_inverse(&g).unwrap();
            let spans: Vec<i64> = (0..n)
                .map(|i| ((bound as f64) * rat_to_f64(&inv[i][i])).sqrt().floor() as i64 + 1)
                .collect();
            let total: i64 = spans.iter().map(|s| 2 * s + 1).product();
            for idx in 0..total {
                let mut v = Vec::with_capacity(n);
                let mut t = idx;
                for s in &spans {
                    v.push(t % (2 * s + 1) - s);
                    t /= 2 * s + 1;
                }
                let last = v.iter().rev().find(|&&x| x != 0);
                if last.is_none_or(|&x| x < 0) {
                    continue;
                }
                let val: BigRational = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| &g[i][j] * r(v[i] * v[j]))
                    .sum();
                if val <= r(bound) {
                    brute.push(v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
                }
            }
            let mut f2 = found.clone();
            f2.sort();
            brute.sort();
            prop_assert_eq!(f2, brute);
        }
    }

    #[test]
    fn field_discriminant_and_mult_table(f in monic(3, 12)) {
        let Some(k) = field_of(&f) else { return Ok(()) };
        let (r, s) = k.signature();
        prop_assert_eq!(r + 2 * s, k.degree());
        prop_assert_eq!(f.discriminant().unwrap(), k.index() * k.index() * k.disc());
        prop_assert!(k.disc().is_positive() == (s % 2 == 0));
        let n = k.degree();
        for i in 0..n {
            for j in 0..n {
                let mut a = vec![BigInt::zero(); n];
                let mut b = a.clone();
                a[i] = BigInt::one();
                b[j] = BigInt::one();
                let prod = &AlgebraicNumber::from_int_coords(&k, &a) * &AlgebraicNumber::from_int_coords(&k, &b);
                prop_assert!(prod.is_integral());
            }
        }
    }

    #[test]
    fn norm_is_multiplicative(f in monic(3, 8), a in prop::collection::vec(-6i64..6, 3), b in prop::collection::vec(-6i64..6, 3)) {
        let Some(k) = field_of(&f) else { return Ok(()) };
        let x = AlgebraicNumber::from_int_coords(&k, &a.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        let y = AlgebraicNumber::from_int_coords(&k, &b.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
    }

    #[test]
    fn splitting_invariants(f in monic(3, 10), qi in 0usize..6) {
        let q = [2u64, 3, 5, 7, 11, 13][qi];
        let Some(k) = field_of(&f) else { return Ok(()) };
        let sd = factor_rational_prime(&k, q).unwrap();
        prop_assert_eq!(sd.ef().iter().map(|&(e, f)| e * f).sum::<u32>() as usize, k.degree());
        let mut prod = IntegralIdeal::unit_ideal(&k);
        for p in &sd.factors {
            prop_assert_eq!(p.ideal().norm(), &BigInt::from(q).pow(p.f()));
            prop_assert_eq!(p.valuation_ideal(&IntegralIdeal::from_integer(&k, &q.into()).unwrap()), u64::from(p.e()));
            prod = prod.mul(&p.ideal().pow(p.e()));
        }
        let qo = IntegralIdeal::from_integer(&k, &q.into()).unwrap();
        prop_assert_eq!(prod.hnf(), qo.hnf());
        let t: Vec<usize> = (0..sd.factors.len()).filter(|&i| sd.factors[i].f() == 1).collect();
        let v: Vec<usize> = (0..sd.factors.len()).filter(|&i| sd.factors[i].e() % 2 == 1).collect();
        prop_assert_eq!(&sd.t, &t);
        prop_assert_eq!(&sd.v, &v);
    }

    #[test]
    fn valuation_is_additive(f in monic(2, 10), a in prop::collection::vec(-9i64..9, 2), b in prop::collection::vec(-9i64..9, 2)) {
        let Some(k) = field_of(&f) else { return Ok(()) };
        let to = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let (a, b) = (to(&a), to(&b));
        prop_assume!(a.iter().any(|x| !x.is_zero()) && b.iter().any(|x| !x.is_zero()));
        let i = IntegralIdeal::principal_int(&k, &a).unwrap();
        let j = IntegralIdeal::principal_int(&k, &b).unwrap();
        let ij = i.mul(&j);
        prop_assert_eq!(ij.norm(), &(i.norm() * j.norm()));
        for q in [2u64, 3, 5] {
            for p in factor_rational_prime(&k, q).unwrap().factors {
                prop_assert_eq!(p.valuation_ideal(&i.mul(&j)), p.valuation_ideal(&i) + p.valuation_ideal(&j));
            }
        }
    }

    #[test]
    fn relative_norm_is_multiplicative(f in monic(2, 12), c in prop::collection::vec(-5i64..5, 4)) {
        let Some(k) = field_of(&f) else { return Ok(()) };
        let Ok(rel) = adjoin_sqrt_minus3(&k) else { return Ok(()) };
        let e = |x: i64, y: i64| AlgebraicNumber::from_int_coords(&k, &[BigInt::from(x), BigInt::from(y)]);
        let (x1, y1, x2, y2) = (e(c[0], c[1]), e(c[2], c[3]), e(c[1], c[2]), e(c[3], c[0]));
        let z1 = rel.make(&x1, &y1);
        let z2 = rel.make(&x2, &y2);
        prop_assert_eq!(rel.relative_norm(&(&z1 * &z2)), &rel.relative_norm(&z1) * &rel.relative_norm(&z2));
        // N(x + y sqrt -3) = x^2 + 3 y^2
        let three = AlgebraicNumber::from_i64(&k, 3);
        prop_assert_eq!(rel.relative_norm(&z1), &(&x1 * &x1) + &(&three * &(&y1 * &y1)));
        prop_assert_eq!(rel.conjugate(&rel.conjugate(&z1)), z1.clone());
        prop_assert_eq!(rel.conjugate(&rel.embed(&x1)), rel.embed(&x1));
    }
}

#[test]
fn listed_cubics_are_totally_real() {
    for s in [
        "x^3-3x-1", "x^3-x^2-4x+1", "x^3-x^2-5x+3", "x^3-6x-3", "x^3-6x-2", "x^3-6x-1", "x^3-x^2-6x+3",
        "x^3-x^2-9x+12", "x^3-x^2-8x-3", "x^3-x^2-7x+1", "x^3-12x-14", "x^3-9x-6",
    ] {
        let k = build_field(&parse_poly(s).unwrap()).unwrap();
        assert_eq!(k.signature(), (3, 0), "{s}");
    }
}
