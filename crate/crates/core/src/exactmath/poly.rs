//! Dense univariate polynomials over Z and Q, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::matrix::det_bareiss;

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BigIntPoly {
    coeffs: Vec<BigInt>,
}

impl BigIntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BigIntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        BigIntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Divides out the content; leading coefficient becomes positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Divides by the positive gcd of the coefficients, keeping signs.
    pub fn primitive_part_signed(&self) -> Self {
        let g = self.content().abs();
        if g.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// `p(c x)`.
    pub fn scale_var(&self, c: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut acc = BigIntPoly::zero();
        let lin = BigIntPoly::new(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &BigIntPoly::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BigIntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Exact division over Z; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BigIntPoly) -> Option<BigIntPoly> {
        let (q, r) = self.to_rat().div_rem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_integer_poly()
    }

    /// Sylvester-matrix resultant.
    pub fn resultant(&self, other: &BigIntPoly) -> BigInt {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return self.leading().pow(n as u32);
        }
        if n == 0 {
            return other.leading().pow(m as u32);
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        det_bareiss(&rows)
    }

    /// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = match self.degree() {
            None => return Err(Error::domain("discriminant of the zero polynomial")),
            Some(0) => return Err(Error::domain("discriminant of a constant polynomial")),
            Some(n) => n,
        };
        let res = self.resultant(&self.derivative());
        let d = res / self.leading();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }

    pub fn gcd(&self, other: &BigIntPoly) -> BigIntPoly {
        let g = self.to_rat().gcd(&other.to_rat());
        g.to_primitive_integer_poly()
    }

    /// Squarefree over Q.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect()
    }
}

impl Add for &BigIntPoly {
    type Output = BigIntPoly;
    fn add(self, rhs: &BigIntPoly) -> BigIntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BigIntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &BigIntPoly {
    type Output = BigIntPoly;
    fn sub(self, rhs: &BigIntPoly) -> BigIntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BigIntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &BigIntPoly {
    type Output = BigIntPoly;
    fn mul(self, rhs: &BigIntPoly) -> BigIntPoly {
        if self.is_zero() || rhs.is_zero() {
            return BigIntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BigIntPoly::new(out)
    }
}

impl Neg for &BigIntPoly {
    type Output = BigIntPoly;
    fn neg(self) -> BigIntPoly {
        BigIntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for BigIntPoly {
    /// Renders as e.g. `x^3 - 3*x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(), "x")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<BigRational>, var: &str) -> fmt::Result {
    if coeffs.iter().all(Zero::is_zero) {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{a}*{mono}")?;
        }
    }
    Ok(())
}

impl FromStr for BigIntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Largest degree the parser will build; guards against `(x+1)^99999`.
pub const PARSE_DEGREE_LIMIT: usize = 4096;
const PARSE_LITERAL_DIGITS_LIMIT: usize = 4096;
/// 2^13600 has 4094 decimal digits.
const PARSE_COEFF_BITS_LIMIT: u64 = 13_600;

const PARSE_DEPTH_LIMIT: usize = 64;

/// Parses integer-coefficient univariate expressions such as `x^3 - 3*x - 1`.
///
/// Accepts `+ - *`, `^` with non-negative integer exponents, parentheses,
/// implicit multiplication (`3x`, `2(x+1)`) and any single-letter variable
/// name used consistently. Whitespace is ignored.
pub fn parse_poly(s: &str) -> Result<BigIntPoly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, var: None, depth: 0 };
    p.skip_ws();
    if p.pos >= p.src.len() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    // keep every result printable within the literal limit
    if out.max_abs_coeff().bits() > PARSE_COEFF_BITS_LIMIT {
        return Err(Error::Parse { pos: 0, msg: "coefficient too large".into() });
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<u8>,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BigIntPoly> {
        self.depth += 1;
        if self.depth > PARSE_DEPTH_LIMIT {
            return Err(self.err("nesting too deep"));
        }
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<BigIntPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    let rhs = self.power()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn checked_mul(&self, a: &BigIntPoly, b: &BigIntPoly) -> Result<BigIntPoly> {
        let d = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
        if d > PARSE_DEGREE_LIMIT {
            return Err(self.err("degree limit exceeded"));
        }
        Ok(a * b)
    }

    fn power(&mut self) -> Result<BigIntPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: usize = e
                .try_into()
                .ok()
                .filter(|&e: &usize| e <= PARSE_DEGREE_LIMIT)
                .ok_or_else(|| self.err("exponent too large"))?;
            let deg = base.degree().unwrap_or(0);
            if deg.saturating_mul(e) > PARSE_DEGREE_LIMIT {
                return Err(self.err("degree limit exceeded"));
            }
            if deg == 0 && base.max_abs_coeff().bits() as usize * e > 1 << 16 {
                return Err(self.err("constant too large"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BigIntPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(BigIntPoly::constant(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                match self.var {
                    None => self.var = Some(c),
                    Some(v) if v == c => {}
                    Some(_) => return Err(self.err("more than one variable")),
                }
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
                    return Err(self.err("variable names are a single letter"));
                }
                Ok(BigIntPoly::x())
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        if self.pos - start > PARSE_LITERAL_DIGITS_LIMIT {
            return Err(self.err("integer literal too long"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }
}

/// Polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.leading().recip();
        (r0.scale(&lc), s0.scale(&lc), t0.scale(&lc))
    }

    /// `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn common_denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn to_integer_poly(&self) -> Option<BigIntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(BigIntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Clears denominators and content; leading coefficient positive.
    pub fn to_primitive_integer_poly(&self) -> BigIntPoly {
        let d = self.common_denominator();
        let v = self.coeffs.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect();
        BigIntPoly::new(v).primitive_part()
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.clone(), "x")
    }
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = x.to_f64() {
        return v;
    }
    // Scale both sides down to keep the quotient finite.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift_n = (nb - 1000).max(0) as usize;
    let shift_d = (db - 1000).max(0) as usize;
    let n = bigint_to_f64(&(x.numer() >> shift_n));
    let d = bigint_to_f64(&(x.denom() >> shift_d));
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BigIntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^3 - 3*x - 1"), BigIntPoly::from_i64(&[-1, -3, 0, 1]));
        assert_eq!(p("x^3-3x-1"), BigIntPoly::from_i64(&[-1, -3, 0, 1]));
        assert_eq!(p(" - x + 2 (x+1)^2 "), BigIntPoly::from_i64(&[2, 3, 2]));
        assert_eq!(p("t^2+3"), BigIntPoly::from_i64(&[3, 0, 1]));
        assert_eq!(p("x^3-3*x-1").to_string(), "x^3 - 3*x - 1");
        assert_eq!(p("-x^2 + 1").to_string(), "-x^2 + 1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("x + y").is_err());
        assert!(parse_poly("xy").is_err());
        assert!(parse_poly("(x+1").is_err());
        assert!(parse_poly("x^99999").is_err());
        assert!(parse_poly("(x^100)^100").is_err());
        assert!(parse_poly("x/2").is_err());
        // value would print longer than any accepted literal
        assert!(parse_poly("333^3333").is_err());
        let big = parse_poly("2^4000 * 2^4000 * 2^4000 - 1").unwrap();
        assert_eq!(parse_poly(&big.to_string()).unwrap(), big);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p("x^3-3*x-1").discriminant().unwrap(), BigInt::from(81));
        assert_eq!(p("x-1").discriminant().unwrap(), BigInt::from(1));
        assert_eq!(p("x^2+3").discriminant().unwrap(), BigInt::from(-12));
        assert!(BigIntPoly::zero().discriminant().is_err());
    }

    #[test]
    fn depressed_cubic_oracle() {
        // disc(x^3 + a x + b) = -4a^3 - 27b^2
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let f = BigIntPoly::from_i64(&[b, a, 0, 1]);
                assert_eq!(f.discriminant().unwrap(), BigInt::from(-4 * a * a * a - 27 * b * b));
            }
        }
    }

    #[test]
    fn gcd_and_division() {
        let f = p("(x-1)^2*(x+2)");
        let g = p("(x-1)*(x+5)");
        assert_eq!(f.gcd(&g), p("x-1"));
        assert_eq!(f.div_exact(&p("x+2")), Some(p("(x-1)^2")));
        assert_eq!(f.div_exact(&p("x+3")), None);
        assert!(!f.is_squarefree());
        assert!(g.is_squarefree());
    }

    #[test]
    fn shift_and_scale() {
        assert_eq!(p("x^2").shift(&BigInt::from(1)), p("x^2+2x+1"));
        assert_eq!(p("x^3-3x-1").scale_var(&BigInt::from(-1)), p("-x^3+3x-1"));
    }

    #[test]
    fn rat_ext_gcd() {
        let a = p("x^3-3x-1").to_rat();
        let b = p("x^2+1").to_rat();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, RatPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), RatPoly::one());
    }
}
