//! Real root isolation with Sturm sequences over exact rationals, exact
//! sign determination at isolated roots, and numeric complex roots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{rat_to_f64, BigIntPoly, RatPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sturm sequence with each term rescaled by a positive constant.
pub fn sturm_sequence(f: &BigIntPoly) -> Vec<BigIntPoly> {
    let mut seq = vec![f.primitive_part_signed(), f.derivative().primitive_part_signed()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        if seq[n - 1].degree() == Some(0) {
            break;
        }
        let r = seq[n - 2].to_rat().rem(&seq[n - 1].to_rat());
        if r.is_zero() {
            break;
        }
        let neg = -&r;
        seq.push(rat_poly_positive_scale(&neg));
    }
    seq
}

// Multiply by a positive rational to get a primitive integer polynomial.
fn rat_poly_positive_scale(p: &RatPoly) -> BigIntPoly {
    let den = p.common_denominator();
    let ip = BigIntPoly::new(p.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect());
    ip.primitive_part_signed()
}

fn sign_changes<I: Iterator<Item = Ordering>>(signs: I) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

pub fn variations_at(seq: &[BigIntPoly], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| sign_of(&p.eval_rat(x))))
}

fn variations_at_infinity(seq: &[BigIntPoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|p| {
        let lc = p.leading();
        let d = p.degree().unwrap_or(0);
        let s = lc.sign();
        let s = if !positive && d % 2 == 1 { -s } else { s };
        match s {
            num_bigint::Sign::Plus => Ordering::Greater,
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(f: &BigIntPoly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Cauchy bound: every root has absolute value < 1 + max |a_i / a_n|.
pub fn root_bound(f: &BigIntPoly) -> BigRational {
    let lc = BigRational::from_integer(f.leading().abs());
    let m = f.coeffs()[..f.coeffs().len() - 1]
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + rat(1)
}

/// Disjoint isolating intervals for the real roots of a squarefree
/// polynomial, in increasing order. Each interval is either a single exact
/// rational root or has non-root endpoints with exactly one root inside.
pub fn isolate_real_roots(f: &BigIntPoly) -> Result<Vec<RationalInterval>> {
    if f.is_zero() {
        return Err(Error::domain("zero polynomial has no isolated roots"));
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::domain(format!("polynomial is not squarefree: repeated factor {g}")));
    }
    let seq = sturm_sequence(f);
    let b = root_bound(f);
    let lo = -b.clone();
    let mut out = Vec::new();
    let vlo = variations_at(&seq, &lo);
    let vhi = variations_at(&seq, &b);
    let mut stack = vec![(lo, b, vlo, vhi)];
    while let Some((a, c, va, vc)) = stack.pop() {
        let count = va - vc;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(RationalInterval::new(a, c));
            continue;
        }
        let m = split_point(f, &a, &c);
        let vm = variations_at(&seq, &m);
        stack.push((a, m.clone(), va, vm));
        stack.push((m, c, vm, vc));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // separate intervals that share an endpoint
    loop {
        let mut touched = false;
        for i in 1..out.len() {
            if out[i - 1].hi >= out[i].lo {
                out[i - 1] = bisect_once(f, &out[i - 1]);
                out[i] = bisect_once(f, &out[i]);
                touched = true;
            }
        }
        if !touched {
            break;
        }
    }
    Ok(out)
}

// A point strictly inside (a, c) that is not a root.
fn split_point(f: &BigIntPoly, a: &BigRational, c: &BigRational) -> BigRational {
    let two = rat(2);
    let mut m = (a + c) / &two;
    let mut k = 3i64;
    while f.eval_rat(&m).is_zero() {
        m = a + (c - a) / rat(k);
        k += 1;
    }
    m
}

fn bisect_once(f: &BigIntPoly, iv: &RationalInterval) -> RationalInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let m = iv.mid();
    let fm = f.eval_rat(&m);
    if fm.is_zero() {
        return RationalInterval::point(m);
    }
    let flo = f.eval_rat(&iv.lo);
    if flo.is_zero() {
        return RationalInterval::point(iv.lo.clone());
    }
    if flo.is_negative() != fm.is_negative() {
        RationalInterval::new(iv.lo.clone(), m)
    } else {
        RationalInterval::new(m, iv.hi.clone())
    }
}

/// Shrink an isolating interval until its width is at most `width`.
pub fn refine(f: &BigIntPoly, iv: &RationalInterval, width: &BigRational) -> RationalInterval {
    let mut cur = iv.clone();
    while &cur.width() > width {
        cur = bisect_once(f, &cur);
    }
    cur
}

/// Interval enclosure of `g` over `iv` by interval Horner evaluation.
fn eval_interval(g: &RatPoly, iv: &RationalInterval) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for c in g.coeffs().iter().rev() {
        let cands = [&lo * &iv.lo, &lo * &iv.hi, &hi * &iv.lo, &hi * &iv.hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        lo = mn + c;
        hi = mx + c;
    }
    (lo, hi)
}

/// Exact sign of `g(r)` where `r` is the unique root of `f` in `iv`.
/// Returns the sign and the refined interval used as certificate.
/// `g(r)` must be nonzero unless `g` shares the root (then Equal).
pub fn sign_at_root(f: &BigIntPoly, iv: &RationalInterval, g: &RatPoly) -> (Ordering, RationalInterval) {
    if g.is_zero() {
        return (Ordering::Equal, iv.clone());
    }
    // common root test: gcd(f, g) vanishing in the interval
    let common = f.to_rat().gcd(g);
    if common.degree().unwrap_or(0) > 0 {
        let c = common.to_primitive_integer_poly();
        let seq = sturm_sequence(&c);
        let inside = if iv.is_point() {
            c.eval_rat(&iv.lo).is_zero()
        } else {
            variations_at(&seq, &iv.lo) - variations_at(&seq, &iv.hi) > 0
        };
        if inside {
            return (Ordering::Equal, iv.clone());
        }
    }
    let mut cur = iv.clone();
    loop {
        if cur.is_point() {
            return (sign_of(&g.eval(&cur.lo)), cur);
        }
        let (lo, hi) = eval_interval(g, &cur);
        if lo.is_positive() {
            return (Ordering::Greater, cur);
        }
        if hi.is_negative() {
            return (Ordering::Less, cur);
        }
        cur = bisect_once(f, &cur);
    }
}

/// All complex roots, numerically (Aberth iteration, Newton polish).
/// Real roots come first in increasing order, followed by roots with
/// positive imaginary part ordered by real part, each followed by nothing:
/// conjugates are not repeated.
pub fn complex_roots_upper(f: &BigIntPoly) -> (Vec<f64>, Vec<Complex64>) {
    let real = isolate_real_roots(f)
        .map(|ivs| {
            let w = BigRational::new(BigInt::one(), BigInt::one() << 80);
            ivs.iter().map(|iv| refine(f, iv, &w).to_f64()).collect::<Vec<_>>()
        })
        .unwrap_or_default();
    let all = aberth(f);
    let mut upper: Vec<Complex64> = all.into_iter().filter(|z| z.im > 1e-9 * (1.0 + z.norm())).collect();
    upper.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    (real, upper)
}

fn horner_c(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn aberth(f: &BigIntPoly) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lc = rat_to_f64(&BigRational::from_integer(f.leading()));
    let c: Vec<f64> = f.coeffs().iter().map(|x| rat_to_f64(&BigRational::from_integer(x.clone())) / lc).collect();
    let r = rat_to_f64(&root_bound(f)).min(1e12);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * r.max(1.0), ang)
        })
        .collect();
    for _ in 0..500 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner_c(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxstep = maxstep.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_c(&c, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> BigIntPoly {
        BigIntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        let f = poly(&[-1, -3, 0, 1]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 3);
        assert_eq!(count_real_roots(&f), 3);
        assert!(isolate_real_roots(&poly(&[3, 0, 1])).unwrap().is_empty());
        let ivs = isolate_real_roots(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        let w = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
        let r = refine(&poly(&[-2, 0, 1]), &ivs[1], &w);
        assert!((r.to_f64() - 2f64.sqrt()).abs() < 1e-5);
        assert!(r.width() <= w);
        assert!(isolate_real_roots(&poly(&[1, 2, 1])).is_err());
    }

    #[test]
    fn rational_roots_at_split_points() {
        // roots -1, 0, 1, 2 land on natural bisection points
        let f = &(&poly(&[0, 1]) * &poly(&[1, 1])) * &(&poly(&[-1, 1]) * &poly(&[-2, 1]));
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 4);
        for w in ivs.windows(2) {
            assert!(w[0].hi() < w[1].lo());
        }
        for (iv, r) in ivs.iter().zip([-1i64, 0, 1, 2]) {
            assert!(iv.contains(&rat(r)));
        }
    }

    #[test]
    fn signs() {
        let f = poly(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&f).unwrap();
        let g = RatPoly::new(vec![rat(2), rat(1)]);
        assert_eq!(sign_at_root(&f, &ivs[0], &g).0, Ordering::Greater);
        let h = RatPoly::new(vec![rat(0), rat(1)]);
        assert_eq!(sign_at_root(&f, &ivs[0], &h).0, Ordering::Less);
        let z = RatPoly::new(vec![rat(-2), rat(0), rat(1)]);
        assert_eq!(sign_at_root(&f, &ivs[0], &z).0, Ordering::Equal);
    }

    #[test]
    fn complex_roots() {
        let (re, up) = complex_roots_upper(&poly(&[1, 1, 1]));
        assert!(re.is_empty());
        assert_eq!(up.len(), 1);
        assert!((up[0] - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
    }
}
