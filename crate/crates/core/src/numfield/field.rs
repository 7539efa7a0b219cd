//! Number fields given by a monic irreducible integer polynomial, with a
//! certified maximal order.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::intfactor::factor_bigint;
use crate::exactmath::matrix::{
    hnf, hnf_mod, int_to_rat_matrix, left_kernel_mod_p, rat_det, rat_inverse, rat_mul, IntegerMatrix, RatMatrix,
};
use crate::exactmath::modp::{factor_fp, FpPoly};
use crate::exactmath::poly::{BigIntPoly, RatPoly};
use crate::exactmath::roots::{complex_roots_upper, count_real_roots, isolate_real_roots, RationalInterval};
use crate::exactmath::zfactor::irreducibility_witness;

/// Largest degree accepted by [`build_field`].
pub const MAX_FIELD_DEGREE: usize = 12;

pub type Field = Arc<NumberField>;

/// How p-maximality of the computed order was established at a prime p
/// with p^2 dividing the polynomial discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityCertificate {
    Dedekind,
    Round2 { enlargements: usize },
}

pub struct NumberField {
    poly: BigIntPoly,
    n: usize,
    r1: usize,
    r2: usize,
    poly_disc: BigInt,
    disc: BigInt,
    index: BigInt,
    // rows: integral basis elements in power-basis coordinates
    basis: RatMatrix,
    basis_inv: RatMatrix,
    basis_polys: Vec<RatPoly>,
    mult: Vec<Vec<Vec<BigInt>>>,
    traces: Vec<BigInt>,
    certificates: Vec<(BigInt, MaximalityCertificate)>,
    real_roots: Vec<RationalInterval>,
    // sigma_k(omega_i), embeddings ordered: real ascending, then complex
    // with positive imaginary part
    basis_embeddings: Vec<Vec<Complex64>>,
    conj: OnceLock<Vec<Vec<BigInt>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for NumberField {}

pub(crate) fn power_reduce(p: &RatPoly, f: &RatPoly) -> RatPoly {
    if p.degree().unwrap_or(0) < f.degree().unwrap_or(0) {
        p.clone()
    } else {
        p.rem(f)
    }
}

fn poly_to_vec(p: &RatPoly, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| p.coeff(i)).collect()
}

pub(crate) fn mul_table(
    f: &BigIntPoly,
    basis: &RatMatrix,
    basis_inv: &RatMatrix,
) -> Option<Vec<Vec<Vec<BigInt>>>> {
    let n = basis.len();
    let fr = f.to_rat();
    let polys: Vec<RatPoly> = basis.iter().map(|r| RatPoly::new(r.clone())).collect();
    let mut t = vec![vec![vec![BigInt::zero(); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = power_reduce(&(&polys[i] * &polys[j]), &fr);
            let v = poly_to_vec(&prod, n);
            let mut coords = vec![BigRational::zero(); n];
            for (k, vk) in v.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                for (m, c) in coords.iter_mut().enumerate() {
                    *c += vk * &basis_inv[k][m];
                }
            }
            for m in 0..n {
                if !coords[m].is_integer() {
                    return None;
                }
                let z = coords[m].to_integer();
                t[i][j][m] = z.clone();
                t[j][i][m] = z;
            }
        }
    }
    Some(t)
}

pub(crate) fn mul_coords(t: &[Vec<Vec<BigInt>>], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let ab = &a[i] * &b[j];
            for (k, o) in out.iter_mut().enumerate() {
                let tk = &t[i][j][k];
                if !tk.is_zero() {
                    *o += &ab * tk;
                }
            }
        }
    }
    out
}

pub(crate) fn reduce_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Structure constants reduced mod p, for repeated use.
pub(crate) struct ModTable {
    pub p: u64,
    pub t: Vec<Vec<Vec<u64>>>,
}

impl ModTable {
    pub fn new(t: &[Vec<Vec<BigInt>>], p: u64) -> Self {
        ModTable { p, t: t.iter().map(|r| r.iter().map(|c| c.iter().map(|x| reduce_u64(x, p)).collect()).collect()).collect() }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len();
        let p = self.p as u128;
        let mut out = vec![0u128; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = (a[i] as u128 * b[j] as u128) % p;
                for (k, o) in out.iter_mut().enumerate() {
                    let tk = self.t[i][j][k];
                    if tk != 0 {
                        *o = (*o + ab * tk as u128) % p;
                    }
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    pub fn pow(&self, a: &[u64], e: &BigInt, one: &[u64]) -> Vec<u64> {
        let mut acc = one.to_vec();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

/// Basis (lower triangular over the power basis, row i of degree i) of the
/// Z-module spanned by rational vectors in power-basis coordinates.
pub(crate) fn rational_lattice_basis(gens: &[Vec<BigRational>], n: usize) -> RatMatrix {
    let den = gens.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dr = BigRational::from_integer(den.clone());
    let rows: Vec<Vec<BigInt>> =
        gens.iter().map(|g| (0..n).rev().map(|c| (&g[c] * &dr).to_integer()).collect()).collect();
    let (h, _) = hnf(&IntegerMatrix::new(rows, n));
    let hr = h.rows();
    (0..n)
        .map(|i| {
            let row = &hr[n - 1 - i];
            (0..n).map(|c| BigRational::new(row[n - 1 - c].clone(), den.clone())).collect()
        })
        .collect()
}

// Radical of pO in O-coordinates, as a square HNF matrix.
pub(crate) fn radical_mod_p(t: &[Vec<Vec<BigInt>>], one: &[BigInt], p: u64) -> IntegerMatrix {
    let n = one.len();
    let table = ModTable::new(t, p);
    let mut q = BigInt::from(p);
    while q < BigInt::from(n) {
        q *= p;
    }
    let one_p: Vec<u64> = one.iter().map(|x| reduce_u64(x, p)).collect();
    let frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            table.pow(&e, &q, &one_p)
        })
        .collect();
    let ker = left_kernel_mod_p(&frob, p);
    let gens: Vec<Vec<BigInt>> = ker.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    hnf_mod(&gens, n, &BigInt::from(p))
}

// One Round-2 step at p: the ring of multipliers of the radical, as a
// basis over the power basis. Returns None when the order is p-maximal.
fn round2_step(basis: &RatMatrix, t: &[Vec<Vec<BigInt>>], p: u64) -> Option<RatMatrix> {
    let n = basis.len();
    let one = unit_coords(basis);
    let rad = radical_mod_p(t, &one, p);
    let gamma = int_to_rat_matrix(rad.rows());
    let gamma_inv = rat_inverse(&gamma).expect("radical has full rank");
    let mut big: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        let mut row = Vec::with_capacity(n * n);
        for k in 0..n {
            let v = mul_coords(t, &e, &rad.rows()[k]);
            for m in 0..n {
                let mut c = BigRational::zero();
                for (l, vl) in v.iter().enumerate() {
                    if !vl.is_zero() {
                        c += BigRational::from_integer(vl.clone()) * &gamma_inv[l][m];
                    }
                }
                debug_assert!(c.is_integer());
                row.push(reduce_u64(&c.to_integer(), p));
            }
        }
        big.push(row);
    }
    let ker = left_kernel_mod_p(&big, p);
    let pr = BigRational::from_integer(BigInt::from(p));
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    for v in &ker {
        let w: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x)) / &pr).collect();
        gens.push(w);
    }
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        gens.push(e);
    }
    let power_gens = rat_mul(&gens, basis);
    let new_basis = rational_lattice_basis(&power_gens, n);
    if rat_det(&new_basis).abs() == rat_det(basis).abs() {
        None
    } else {
        Some(new_basis)
    }
}

// Coordinates of 1 in a basis whose first row is 1.
fn unit_coords(basis: &RatMatrix) -> Vec<BigInt> {
    let n = basis.len();
    let mut v = vec![BigInt::zero(); n];
    v[0] = BigInt::one();
    debug_assert!(basis[0][0].is_one());
    v
}

fn dedekind_is_maximal(f: &BigIntPoly, p: u64) -> bool {
    let fs = factor_fp(&FpPoly::from_poly(f, p));
    let mut g = FpPoly::one(p);
    let mut h = FpPoly::one(p);
    for (gi, e) in &fs {
        g = g.mul(gi);
        for _ in 1..*e {
            h = h.mul(gi);
        }
    }
    let gz = g.to_bigint_poly_nonneg();
    let hz = h.to_bigint_poly_nonneg();
    let diff = &(&gz * &hz) - f;
    let bp = BigInt::from(p);
    let ff = BigIntPoly::new(diff.coeffs().iter().map(|c| c / &bp).collect());
    let u = FpPoly::from_poly(&ff, p).gcd(&g).gcd(&h);
    u.deg() == 0
}

/// Construct the field defined by a monic irreducible polynomial, computing
/// the maximal order.
pub fn build_field(f: &BigIntPoly) -> Result<Field> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::domain("defining polynomial must have positive degree")),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n > MAX_FIELD_DEGREE {
        return Err(Error::cap("field degree", n as u64, MAX_FIELD_DEGREE as u64));
    }
    if let Err(g) = irreducibility_witness(f) {
        return Err(Error::Reducible { factor: g.to_string() });
    }
    let poly_disc = f.discriminant()?;
    let mut basis: RatMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut certificates = Vec::new();
    for (p, e) in factor_bigint(&poly_disc)? {
        if e < 2 {
            continue;
        }
        let pu = p.to_u64().filter(|&x| x < 1 << 32).ok_or_else(|| Error::cap("index prime bits", p.bits(), 32))?;
        if dedekind_is_maximal(f, pu) {
            certificates.push((p, MaximalityCertificate::Dedekind));
            continue;
        }
        let mut enlargements = 0;
        loop {
            let inv = rat_inverse(&basis).expect("basis invertible");
            let t = mul_table(f, &basis, &inv).expect("order closed under multiplication");
            match round2_step(&basis, &t, pu) {
                Some(b) => {
                    basis = b;
                    enlargements += 1;
                }
                None => break,
            }
        }
        certificates.push((p, MaximalityCertificate::Round2 { enlargements }));
    }
    Ok(Arc::new(NumberField::from_basis(f.clone(), poly_disc, basis, certificates)?))
}

impl NumberField {
    fn from_basis(
        poly: BigIntPoly,
        poly_disc: BigInt,
        basis: RatMatrix,
        certificates: Vec<(BigInt, MaximalityCertificate)>,
    ) -> Result<Self> {
        let n = basis.len();
        let basis_inv = rat_inverse(&basis).ok_or_else(|| Error::domain("singular integral basis"))?;
        let mult = mul_table(&poly, &basis, &basis_inv)
            .ok_or_else(|| Error::domain("integral basis not closed under multiplication"))?;
        let det = rat_det(&basis).abs();
        let index_rat = det.recip();
        debug_assert!(index_rat.is_integer());
        let index = index_rat.to_integer();
        let disc = &poly_disc / (&index * &index);
        debug_assert_eq!(&disc * &index * &index, poly_disc);
        let r1 = count_real_roots(&poly);
        let r2 = (n - r1) / 2;
        let real_roots = isolate_real_roots(&poly)?;
        let basis_polys: Vec<RatPoly> = basis.iter().map(|r| RatPoly::new(r.clone())).collect();
        // power sums of the roots give traces of theta^k
        let power_traces = newton_power_sums(&poly, 2 * n);
        let traces = basis_polys
            .iter()
            .map(|bp| {
                let t: BigRational =
                    bp.coeffs().iter().enumerate().map(|(k, c)| c * BigRational::from_integer(power_traces[k].clone())).sum();
                debug_assert!(t.is_integer());
                t.to_integer()
            })
            .collect();
        let (re, up) = complex_roots_upper(&poly);
        let mut points: Vec<Complex64> = re.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        points.extend(up.iter().take(r2));
        let basis_embeddings = points
            .iter()
            .map(|&z| basis_polys.iter().map(|bp| eval_rat_poly_c(bp, z)).collect())
            .collect();
        let field = NumberField {
            poly,
            n,
            r1,
            r2,
            poly_disc,
            disc,
            index,
            basis,
            basis_inv,
            basis_polys,
            mult,
            traces,
            certificates,
            real_roots,
            basis_embeddings,
            conj: OnceLock::new(),
        };
        if n == 2 && r1 == 0 {
            // x -> Tr(x) - x
            let conj = (0..2)
                .map(|i| {
                    let mut row: Vec<BigInt> = vec![BigInt::zero(); 2];
                    row[0] = field.traces[i].clone();
                    row[i] -= 1;
                    row
                })
                .collect();
            let _ = field.conj.set(conj);
        }
        Ok(field)
    }

    pub fn poly(&self) -> &BigIntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn is_totally_real(&self) -> bool {
        self.r2 == 0
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// Rows: integral basis elements in power-basis coordinates.
    pub fn integral_basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &RatMatrix {
        &self.basis_inv
    }

    pub fn basis_poly(&self, i: usize) -> &RatPoly {
        &self.basis_polys[i]
    }

    pub fn mult_table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.mult
    }

    pub fn basis_traces(&self) -> &[BigInt] {
        &self.traces
    }

    pub fn maximality_certificates(&self) -> &[(BigInt, MaximalityCertificate)] {
        &self.certificates
    }

    pub fn real_root_intervals(&self) -> &[RationalInterval] {
        &self.real_roots
    }

    /// `sigma_k(omega_i)` for the r1 + r2 embeddings up to conjugation.
    pub fn basis_embeddings(&self) -> &[Vec<Complex64>] {
        &self.basis_embeddings
    }

    pub fn cm_conjugation(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.conj.get()
    }

    /// Records complex conjugation as an integer matrix on basis
    /// coordinates (rows are images of basis elements). First call wins.
    pub fn set_cm_conjugation(&self, m: Vec<Vec<BigInt>>) {
        let _ = self.conj.set(m);
    }

    pub fn mul_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        mul_coords(&self.mult, a, b)
    }

    /// Matrix of multiplication by `a` acting on row vectors: `x -> x*a`.
    pub fn mult_matrix_int(&self, a: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                for (j, aj) in a.iter().enumerate() {
                    if aj.is_zero() {
                        continue;
                    }
                    for (k, r) in row.iter_mut().enumerate() {
                        let t = &self.mult[i][j][k];
                        if !t.is_zero() {
                            *r += aj * t;
                        }
                    }
                }
                row
            })
            .collect()
    }

    pub fn norm_int(&self, a: &[BigInt]) -> BigInt {
        crate::exactmath::matrix::det_bareiss(&self.mult_matrix_int(a))
    }

    pub fn trace_int(&self, a: &[BigInt]) -> BigInt {
        a.iter().zip(&self.traces).map(|(x, t)| x * t).sum()
    }

    pub fn one_coords(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        v[0] = BigInt::one();
        v
    }

    /// Numeric values of an integral element at the r1 + r2 embeddings.
    pub fn embed_int(&self, a: &[BigInt]) -> Vec<Complex64> {
        self.basis_embeddings
            .iter()
            .map(|row| {
                a.iter()
                    .zip(row)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, w)| w * crate::exactmath::poly::bigint_to_f64(x))
                    .sum()
            })
            .collect()
    }
}

fn eval_rat_poly_c(p: &RatPoly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        acc = acc * z + crate::exactmath::poly::rat_to_f64(c);
    }
    acc
}

/// Power sums p_k = sum of k-th powers of the roots, k = 0..m, of a monic
/// integer polynomial (Newton's identities).
pub fn newton_power_sums(f: &BigIntPoly, m: usize) -> Vec<BigInt> {
    let n = f.degree().unwrap();
    // e-coefficients: f = x^n + a_{n-1} x^{n-1} + ... ; a_{n-k} = coeff
    let a = |k: usize| -> BigInt { if k > n { BigInt::zero() } else { f.coeff(n - k) } };
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = BigInt::from(n);
    for k in 1..=m {
        let mut s = BigInt::zero();
        for i in 1..k {
            if i > n {
                break;
            }
            s += a(i) * &p[k - i];
        }
        if k <= n {
            s += a(k) * BigInt::from(k);
        }
        p[k] = -s;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> BigIntPoly {
        BigIntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        let k = build_field(&poly(&[-1, -3, 0, 1])).unwrap();
        assert_eq!(k.signature(), (3, 0));
        assert_eq!(k.disc(), &BigInt::from(81));
        assert_eq!(k.index(), &BigInt::one());

        let k = build_field(&poly(&[3, 0, 1])).unwrap();
        assert_eq!(k.disc(), &BigInt::from(-3));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(k.integral_basis()[1], vec![half.clone(), half.clone()]);

        let k = build_field(&poly(&[-5, 0, 1])).unwrap();
        assert_eq!(k.disc(), &BigInt::from(5));
        assert_eq!(k.integral_basis()[1], vec![half.clone(), half]);

        assert!(matches!(build_field(&poly(&[-1, 0, 1])), Err(Error::Reducible { .. })));
        assert!(matches!(build_field(&poly(&[1, 0, 2])), Err(Error::NotMonic)));
    }

    #[test]
    fn non_monogenic_cubic() {
        // x^3 - x^2 - 2x - 8 (Dedekind's example): index 2, disc -503
        let k = build_field(&poly(&[-8, -2, -1, 1])).unwrap();
        assert_eq!(k.disc(), &BigInt::from(-503));
        assert_eq!(k.index(), &BigInt::from(2));
    }

    #[test]
    fn power_sums() {
        let p = newton_power_sums(&poly(&[-1, -3, 0, 1]), 4);
        // roots r with r^3 = 3r + 1: p1 = 0, p2 = 6, p3 = 3*p1 + 3 = 3, p4 = 3*p2 + p1 = 18
        assert_eq!(p, vec![3, 0, 6, 3, 18].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
