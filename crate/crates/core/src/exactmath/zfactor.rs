//! Factorization over Z: squarefree split, modular factorization, Hensel
//! lifting and exhaustive recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intfactor::primes_up_to;
use super::modp::{factor_fp, FpPoly};
use super::poly::BigIntPoly;

fn reduce_mod(f: &BigIntPoly, m: &BigInt) -> BigIntPoly {
    BigIntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn centered_mod(f: &BigIntPoly, m: &BigInt) -> BigIntPoly {
    let half = m / 2;
    BigIntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(f: &BigIntPoly, p: u64) -> FpPoly {
    FpPoly::from_poly(f, p)
}

// Linear Hensel lift of f = g*h mod p to mod p^k, g monic.
fn hensel_pair(f: &BigIntPoly, g: &BigIntPoly, h: &BigIntPoly, p: u64, k: u32) -> (BigIntPoly, BigIntPoly) {
    let (one, s, t) = to_fp(g, p).ext_gcd(&to_fp(h, p));
    debug_assert!(one.is_one(), "factors not coprime mod p");
    let bp = BigInt::from(p);
    let pk = bp.pow(k);
    let gp = to_fp(g, p);
    let mut g = g.clone();
    let mut h = h.clone();
    let mut pj = bp.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e = BigIntPoly::new(diff.coeffs().iter().map(|c| c.div_floor(&pj)).collect());
        let e = to_fp(&e, p);
        let (q, dg) = t.mul(&e).div_rem(&gp);
        let dh = s.mul(&e).add(&q.mul(&to_fp(&h, p)));
        g = &g + &dg.to_bigint_poly_nonneg().scale(&pj);
        h = &h + &dh.to_bigint_poly_nonneg().scale(&pj);
        pj *= &bp;
    }
    (reduce_mod(&g, &pk), reduce_mod(&h, &pk))
}

// Lift f = lc * prod(factors) mod p to mod p^k; factors monic mod p.
fn hensel_multi(f: &BigIntPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<BigIntPoly> {
    let pk = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    let mut cur = reduce_mod(f, &pk);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            // remaining cofactor is lc times the last factor; make it monic
            let lc = cur.leading();
            let inv = lc.modinv(&pk).expect("leading coefficient invertible");
            out.push(reduce_mod(&cur.scale(&inv), &pk));
            break;
        }
        let g = factors[i].to_bigint_poly_nonneg();
        let rest = factors[i + 1..].iter().fold(FpPoly::one(p), |a, b| a.mul(b));
        let lc = to_fp(&BigIntPoly::constant(cur.leading()), p).coeff(0);
        let h = rest.scale(lc).to_bigint_poly_nonneg();
        let (gl, hl) = hensel_pair(&cur, &g, &h, p, k);
        out.push(gl);
        cur = hl;
    }
    out
}

fn mignotte_bound(f: &BigIntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let sq = BigInt::from(n as u64 + 1).sqrt() + 1;
    sq * (BigInt::one() << n) * f.max_abs_coeff() * f.leading().abs()
}

/// Factor a primitive squarefree polynomial of positive degree.
fn zassenhaus(f: &BigIntPoly) -> Vec<BigIntPoly> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }
    let disc = f.discriminant().expect("positive degree");
    let lc = f.leading();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(20_000).into_iter().skip(1) {
        if (&lc % p).is_zero() || (&disc % p).is_zero() {
            continue;
        }
        let fs = factor_fp(&to_fp(f, p));
        let fs: Vec<FpPoly> = fs.into_iter().map(|(g, _)| g).collect();
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let (p, modfactors) = best.expect("some prime is good for a squarefree polynomial");
    let bound = mignotte_bound(f) * 2;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = bp.clone();
    while pk <= bound {
        pk *= &bp;
        k += 1;
    }
    let lifted = hensel_multi(f, &modfactors, p, k);

    let mut remaining: Vec<BigIntPoly> = lifted;
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        for subset in subsets(remaining.len(), s) {
            let lc = f.leading();
            let mut g = BigIntPoly::constant(lc.clone());
            for &i in &subset {
                g = reduce_mod(&(&g * &remaining[i]), &pk);
            }
            let g = centered_mod(&g, &pk).primitive_part();
            if let Some(q) = f.div_exact(&g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                f = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, r)| r)
                    .collect();
            }
            None => s += 1,
        }
    }
    let f = if f.leading().is_negative() { -&f } else { f };
    found.push(f);
    found
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factorization into primitive irreducibles with positive leading
/// coefficient; the content is dropped. Sorted by (degree, coefficients).
pub fn factor_z(f: &BigIntPoly) -> Vec<(BigIntPoly, u32)> {
    assert!(!f.is_zero());
    let f = f.primitive_part();
    if f.degree() == Some(0) {
        return Vec::new();
    }
    // Yun over Q
    let mut out = Vec::new();
    let fq = f.to_rat();
    let d = fq.derivative();
    let a = fq.gcd(&d);
    let mut b = fq.div_rem(&a).0;
    let mut c = d.div_rem(&a).0;
    let mut i = 1u32;
    loop {
        let bd = b.derivative();
        let e = &c - &bd;
        if b.degree() == Some(0) {
            break;
        }
        let g = b.gcd(&e);
        let part = g.to_primitive_integer_poly();
        if part.degree().unwrap_or(0) > 0 {
            for h in zassenhaus(&part) {
                out.push((h, i));
            }
        }
        b = b.div_rem(&g).0;
        c = e.div_rem(&g).0;
        i += 1;
    }
    for (h, _) in out.iter_mut() {
        if h.leading().is_negative() {
            *h = -&*h;
        }
    }
    out.sort_by(|(x, _), (y, _)| (x.degree(), x.coeffs()).cmp(&(y.degree(), y.coeffs())));
    out
}

/// `Ok(())` if irreducible over Q, else a nontrivial factor.
pub fn irreducibility_witness(f: &BigIntPoly) -> Result<(), BigIntPoly> {
    let fs = factor_z(f);
    if fs.len() == 1 && fs[0].1 == 1 {
        Ok(())
    } else {
        Err(fs.into_iter().next().map(|(g, _)| g).unwrap_or_else(|| f.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> BigIntPoly {
        BigIntPoly::from_i64(c)
    }

    fn expand(fs: &[(BigIntPoly, u32)]) -> BigIntPoly {
        let mut acc = BigIntPoly::one();
        for (g, m) in fs {
            acc = &acc * &g.pow(*m);
        }
        acc
    }

    #[test]
    fn irreducible_inputs() {
        assert!(irreducibility_witness(&poly(&[-1, -3, 0, 1])).is_ok());
        assert!(irreducibility_witness(&poly(&[3, 0, 1])).is_ok());
        // x^4 + 1 splits modulo every prime
        assert!(irreducibility_witness(&poly(&[1, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn reducible_inputs() {
        let f = poly(&[-1, 0, 1]);
        assert_eq!(factor_z(&f), vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1)]);
        let g = &poly(&[1, 0, 1]) * &poly(&[-2, 0, 0, 1]);
        let g = &g * &poly(&[1, 0, 1]);
        let fs = factor_z(&g);
        assert_eq!(expand(&fs), g);
        assert_eq!(fs.len(), 2);
        // Swinnerton-Dyer style: (x^2-2)(x^2-3) has many modular factors
        let h = &poly(&[-2, 0, 1]) * &poly(&[-3, 0, 1]);
        assert_eq!(factor_z(&h).len(), 2);
        let nonmonic = &poly(&[1, 2]) * &poly(&[-1, 0, 3]);
        assert_eq!(expand(&factor_z(&nonmonic)), nonmonic);
    }
}
