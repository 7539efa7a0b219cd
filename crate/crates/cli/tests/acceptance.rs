//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero when a criterion deviates from its expected outcome.
//!
//! Criterion 1 cannot pass as literally stated: the listed polynomial for
//! |disc| 993 defines a field of discriminant 1016. The run reports FAIL for
//! it and checks that this row is the only deviation.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::Value;

use flt_core::classunit::{class_number, class_unit_data, narrow_class_number, unit_group, Certification, ClassUnitOptions};
use flt_core::exactmath::matrix::det_bareiss;
use flt_core::exactmath::poly::parse_poly;
use flt_core::idealarith::factor_rational_prime;
use flt_core::numfield::{adjoin_sqrt_minus3, build_field, is_isomorphic, AlgebraicNumber, Field};
use flt_core::pomeyfrey as pf;

/// The reference table as printed: polynomial, |disc|, h(K(sqrt -3)), splitting of 3.
const LISTED: [(&str, u64, u64, &str); 12] = [
    ("x^3-3x-1", 81, 1, "p^3"),
    ("x^3-x^2-4x+1", 321, 1, "p1 p2^2"),
    ("x^3-x^2-5x+3", 564, 1, "p1 p2^2"),
    ("x^3-6x-3", 621, 1, "p^3"),
    ("x^3-6x-2", 756, 1, "p^3"),
    ("x^3-6x-1", 837, 1, "p^3"),
    ("x^3-x^2-6x+2", 993, 1, "p1 p2^2"),
    ("x^3-x^2-9x+12", 1101, 1, "p1 p2^2"),
    ("x^3-x^2-8x-3", 1425, 1, "p1 p2^2"),
    ("x^3-x^2-7x+1", 1524, 1, "p1 p2^2"),
    ("x^3-12x-14", 1620, 1, "p^3"),
    ("x^3-9x-6", 1944, 1, "p^3"),
];

fn flt(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_flt"))
        .arg("--no-cache")
        .args(args)
        .output()
        .expect("flt runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap_or(-1))
}

fn field(s: &str) -> Field {
    build_field(&parse_poly(s).unwrap()).unwrap()
}

fn big(v: &Value) -> BigInt {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or_default()
}

struct Outcome {
    pass: bool,
    /// Whether `pass` is what this run should produce.
    expected: bool,
    detail: String,
}

fn ok(pass: bool, detail: String) -> Outcome {
    Outcome { pass, expected: pass, detail }
}

fn criterion_1() -> Outcome {
    let (v, code) = flt(&["table", "--max-disc", "2000"]);
    let rows = v["rows"].as_array().cloned().unwrap_or_default();
    let mut problems = Vec::new();
    let mut literal_misses = Vec::new();
    if code != 0 {
        problems.push(format!("exit code {code}"));
    }
    if v["certification"] != "unconditional" {
        problems.push("not unconditional".into());
    }
    if rows.len() != LISTED.len() {
        problems.push(format!("{} rows", rows.len()));
    }
    for (row, &(poly, disc, t, ram)) in rows.iter().zip(LISTED.iter()) {
        if row["abs_disc"] != disc || row["t"] != t || row["ramification"] != ram {
            problems.push(format!("row {disc}: {row}"));
            continue;
        }
        let computed = field(row["poly"].as_str().unwrap());
        let listed = field(poly);
        // two routes: equal discriminants plus an explicit embedding
        if computed.disc() != listed.disc() || !is_isomorphic(&computed, &listed) {
            literal_misses.push(format!("{poly} (disc {}) vs {}", listed.disc(), row["poly"].as_str().unwrap()));
        }
    }
    // the only acceptable literal miss is the 993 row, whose listed polynomial
    // has discriminant 1016 and is not in the family at all
    let documented = literal_misses.len() == 1 && literal_misses[0].starts_with("x^3-x^2-6x+2 (disc 1016)");
    let pass = problems.is_empty() && literal_misses.is_empty();
    let detail = if pass {
        "12 rows match".to_string()
    } else {
        format!(
            "12 discriminants, h = 1 and splittings match; polynomial mismatches: [{}]; other problems: [{}]",
            literal_misses.join("; "),
            problems.join("; ")
        )
    };
    // the documented miss is expected to FAIL; anything else should PASS
    Outcome { pass, expected: !(problems.is_empty() && documented), detail }
}

fn criterion_2() -> Outcome {
    let (a, ca) = flt(&["cyclotomic", "--n", "2"]);
    let (b, cb) = flt(&["cyclotomic", "--n", "3"]);
    let n2 = ca == 0
        && a["degree"] == 3
        && a["two_inert"] == true
        && a["three_totally_ramified"] == true
        && a["class_parity"] == "computed"
        && a["verdict"] == "satisfied"
        && a["t"] == 1;
    let n3 = cb == 0
        && b["degree"] == 9
        && b["two_inert"] == true
        && b["three_totally_ramified"] == true
        && b["stv_singleton"] == true
        && b["class_parity"] == "by-cited-result";
    ok(n2 && n3, format!("n=2: {}, n=3: {}", if n2 { "ok" } else { "bad" }, if n3 { "ok" } else { "bad" }))
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for d in [7i64, 13, 19, 31, 37] {
        let (v, code) = flt(&["check", &format!("x^2-{d}")]);
        let fails = code == 0
            && v["verdict"] == "fails"
            && v["reasons"][0] == "class number even"
            && v["obstruction"]["gamma"].as_u64().is_some_and(|g| g >= 2)
            && v["obstruction"]["forces_even"] == true;
        // cross-check: class number of Q(sqrt d, sqrt -3) along two
        // different defining polynomials
        let k = field(&format!("x^2-{d}"));
        let top = adjoin_sqrt_minus3(&k).unwrap().top().clone();
        let alt = field(&format!("x^4-{}*x^2+{}", 2 * (d - 3), (d + 3) * (d + 3)));
        let h1 = class_number(&top, Certification::Unconditional).map(|c| c.h);
        let h2 = class_number(&alt, Certification::Unconditional).map(|c| c.h);
        let even = match (&h1, &h2) {
            (Ok(a), Ok(b)) => a == b && a % 2 == 0,
            _ => false,
        };
        notes.push(format!("d={d} h={}", h1.map(|h| h.to_string()).unwrap_or_else(|e| e.to_string())));
        pass &= fails && even;
    }
    ok(pass, notes.join(", "))
}

fn criterion_4() -> Outcome {
    let q = pf::verify_quadratic_form_identity().holds;
    let mut cons = true;
    for p in (3..=31u64).step_by(2) {
        let r = pf::verify_p_identity(p).unwrap();
        cons &= r.p_mod_3_consequence;
        // independent: P(u, v) mod 3 for u = v = +-1 mod 3
        for (u, v) in [(1u64, 1u64), (2, 2), (4, 7), (5, 2)] {
            let s: u64 = (0..p).map(|r| modpow(u, p - 1 - r, 3) * modpow(v, r, 3)).sum::<u64>() % 3;
            cons &= s == p % 3;
        }
    }
    let want = vec![[-1i8, -1, -1], [1, 1, 1]];
    let mut profiles = true;
    for p in (3..=100u64).filter(|&p| is_prime(p)) {
        let mut r = pf::residue_sign_analysis(p).unwrap().admissible_eps;
        r.sort();
        // brute force over residues 1, 2 mod 3
        let mut brute = Vec::new();
        for a in [2u64, 1] {
            for b in [2u64, 1] {
                for c in [2u64, 1] {
                    if (modpow(a, p, 3) + modpow(b, p, 3) + modpow(c, p, 3)) % 3 == 0 {
                        let e = |x: u64| if x == 1 { 1i8 } else { -1 };
                        brute.push([e(a), e(b), e(c)]);
                    }
                }
            }
        }
        brute.sort();
        profiles &= r == want && brute == want;
    }
    ok(q && cons && profiles, format!("quadratic form {q}, P = p mod 3 {cons}, residue profiles {profiles}"))
}

fn modpow(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * (b % m) % m)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn criterion_5() -> Outcome {
    let (mut found, mut refused, mut bad) = (0, 0, Vec::new());
    for q in (2..=200u64).filter(|&q| is_prime(q) && q != 3) {
        let (v, code) = flt(&["pomey", "represent", "--d", &q.to_string()]);
        let brute = (0..15i64).any(|x| (0..9i64).any(|y| x * x + 3 * y * y == q as i64));
        if q % 3 == 1 {
            let (x, y) = (big(&v["x"]), big(&v["y"]));
            if code == 0 && v["found"] == true && &x * &x + 3 * &y * &y == BigInt::from(q) && brute {
                found += 1;
            } else {
                bad.push(q);
            }
        } else if code == 0 && v["found"] == false && v["mod3_obstruction"]["residue"] == 2 && !brute {
            refused += 1;
        } else {
            bad.push(q);
        }
    }
    ok(bad.is_empty(), format!("{found} represented, {refused} refused, failures {bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut st = true;
    for f in 1..=30u32 {
        let s = pf::steinberg_exclusion(f).unwrap();
        let m = BigInt::from(3).pow(f) - 1;
        let c = BigInt::from(3).pow(f) + 1;
        let hasse = 4 * BigInt::from(3).pow(f);
        st &= s.excluded && s.congruence_square == &c * &c && s.hasse_square == hasse && s.margin == &m * &m;
    }
    let primes = |p: &str| -> Vec<BigInt> {
        let (v, _) = flt(&["pomey", "eigen", "--min-poly", p, "--f", "1"]);
        v["primes"].as_array().map(|a| a.iter().map(big).collect()).unwrap_or_default()
    };
    let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let eig = primes("x") == b(&[2]) && primes("x-2") == b(&[2, 3]) && primes("x^2-2") == b(&[2, 7]);
    ok(st && eig, format!("steinberg f<=30 {st}, eigenvalue examples {eig}"))
}

fn criterion_7() -> Outcome {
    let t0 = Instant::now();
    let mut clean = true;
    let mut notes = Vec::new();
    for (poly, h) in [("x", 20), ("x^3-3*x-1", 10)] {
        for p in [5u64, 11] {
            let (v, code) = flt(&["pomey", "search", "--field", poly, "--p", &p.to_string(), "--height", &h.to_string()]);
            let n = v["nontrivial"].as_array().map(Vec::len);
            clean &= code == 0 && n == Some(0);
            notes.push(format!("{poly} p={p} H={h}: {} pairs, {:?} nontrivial", v["pairs_scanned"], n));
        }
    }
    let secs = t0.elapsed().as_secs();
    ok(clean && secs <= 600, format!("{} ({secs} s)", notes.join("; ")))
}

fn criterion_8() -> Outcome {
    // formal solutions a^p + b^p + c^p = 0 in pure fields
    let mut good = true;
    for (poly, a, b, p) in [("x^3-2", 1, 1, 3u64), ("x^5-2", 1, 1, 5), ("x^3-9", 1, 2, 3)] {
        let k = field(poly);
        let c = -&AlgebraicNumber::theta(&k);
        let (a, b) = (AlgebraicNumber::from_i64(&k, a), AlgebraicNumber::from_i64(&k, b));
        let r = pf::frey_invariants(&a, &b, &c, p).unwrap();
        let abc = &(&a * &b) * &c;
        let closed = &AlgebraicNumber::from_i64(&k, 16) * &abc.pow(2 * p);
        good &= r.is_fermat_solution
            && r.discriminant == closed
            && r.matches_closed_form()
            && r.odd_valuations.iter().all(|v| v.divisible_by_p && v.v_disc % p as i64 == 0);
    }
    ok(
        good,
        format!(
            "not reproducible here: the constants C_K, A_K, B_K, D_K, F_K and everything resting on Hilbert \
             modular forms, modularity, irreducibility or level lowering; substituted by suites 3-7 and Frey \
             invariants (disc = 16(abc)^(2p), p | odd valuations): {}",
            if good { "hold" } else { "violated" }
        ),
    )
}

/// Corpus for the cross-cutting properties.
const CORPUS: [&str; 16] = [
    "x^2-2", "x^2-3", "x^2-5", "x^2-13", "x^2+3", "x^2+23", "x^2-79", "x^3-3*x-1", "x^3-x^2-4*x+1", "x^3-2",
    "x^3-x^2-6*x+3", "x^3-9*x-6", "x^3+x+1", "x^4-10*x^2+1", "x^4+x^3+x^2+x+1", "x^4-x-1",
];

fn criterion_9() -> Outcome {
    let mut fails = Vec::new();
    for s in CORPUS {
        let k = field(s);
        let n = k.degree();
        let (r1, _) = k.signature();

        // norm: multiplicative, and equal to the product of embeddings
        let a = AlgebraicNumber::from_int_poly(&k, &parse_poly("x^2-x+2").unwrap());
        let b = AlgebraicNumber::from_int_poly(&k, &parse_poly("3*x+1").unwrap());
        let ab = &a * &b;
        // complex embeddings come one per conjugate pair
        let prod: f64 = ab
            .embeddings()
            .iter()
            .enumerate()
            .fold(num_complex::Complex64::new(1.0, 0.0), |p, (i, z)| if i < r1 { p * z } else { p * z.norm_sqr() })
            .re;
        let nab: f64 = flt_core::exactmath::poly::rat_to_f64(&ab.norm());
        if ab.norm() != a.norm() * b.norm() || (prod - nab).abs() > 1e-6 * nab.abs().max(1.0) {
            fails.push(format!("{s}: norm"));
        }

        // sum of e f over primes up to 50
        for q in (2..50u64).filter(|&q| is_prime(q)) {
            let sd = factor_rational_prime(&k, q).unwrap();
            if sd.ef().iter().map(|&(e, f)| (e * f) as usize).sum::<usize>() != n {
                fails.push(format!("{s}: sum ef at {q}"));
            }
        }

        // disc(f) = index^2 disc(K), with disc(K) also from the trace form
        let traces: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut ei = vec![BigInt::from(0); n];
                        let mut ej = ei.clone();
                        ei[i] = 1.into();
                        ej[j] = 1.into();
                        k.trace_int(&k.mul_int(&ei, &ej))
                    })
                    .collect()
            })
            .collect();
        let pd = k.poly().discriminant().unwrap();
        if pd != k.index() * k.index() * k.disc() || det_bareiss(&traces) != *k.disc() {
            fails.push(format!("{s}: discriminant"));
        }

        // class number stable when the factor base bound doubles
        let base = class_unit_data(&k, &ClassUnitOptions::default());
        let doubled = class_unit_data(&k, &ClassUnitOptions { bound_scale: 2, ..Default::default() });
        match (&base, &doubled) {
            (Ok(x), Ok(y)) if x.h == y.h && x.class_invariants == y.class_invariants => {}
            _ => fails.push(format!("{s}: class number stability")),
        }

        // h+ 2^k = h 2^r1 with k recomputed as the F2-rank of the unit signs
        if r1 == n {
            let d = unit_group(&k).unwrap();
            let mut rows: Vec<u64> = vec![(1u64 << r1) - 1];
            for u in &d.fundamental_units {
                let emb = u.real_embeddings();
                let bits = emb.iter().enumerate().filter(|(_, x)| **x < 0.0).map(|(i, _)| 1u64 << i);
                rows.push(bits.sum());
            }
            let rank = f2_rank(rows);
            let (hp, kk) = narrow_class_number(&k).unwrap();
            if kk as usize != rank || hp << kk != d.h << r1 {
                fails.push(format!("{s}: narrow class number"));
            }
        }
    }
    ok(fails.is_empty(), format!("{} fields; failures {fails:?}", CORPUS.len()))
}

fn f2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(i) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, i);
            let pivot = rows[rank];
            for (j, r) in rows.iter_mut().enumerate() {
                if j != rank && *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn main() -> ExitCode {
    let suite: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = 0;
    for (i, f) in suite {
        let t0 = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.pass == o.expected { "" } else { " (unexpected)" };
        println!("criterion {i}: {tag}{note} [{:.1}s] {}", t0.elapsed().as_secs_f64(), o.detail);
        if o.pass != o.expected {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
