//! Integer, rational and mod-p matrices: determinants, Hermite and Smith
//! normal forms, kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IntegerMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntegerMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), ncols)
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntegerMatrix { rows: vec![vec![BigInt::zero(); ncols]; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.ncols, other.nrows());
        let mut out = IntegerMatrix::zero(self.nrows(), other.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.ncols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.ncols {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        det_bareiss(&self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    /// Row-style Hermite normal form: upper echelon, positive pivots,
    /// entries above a pivot reduced into `[0, pivot)`, zero rows last.
    pub fn is_hnf(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for (i, row) in self.rows.iter().enumerate() {
            match row.iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last_pivot.is_some_and(|lp| c <= lp) {
                        return false;
                    }
                    let p = &row[c];
                    if !p.is_positive() {
                        return false;
                    }
                    for r in &self.rows[..i] {
                        if r[c].is_negative() || &r[c] >= p {
                            return false;
                        }
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }
}

/// Fraction-free Gaussian elimination determinant.
pub fn det_bareiss(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn row_combine(a: &mut [BigInt], b: &mut [BigInt], s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    // (a, b) <- (s a + t b, u a + v b)
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let nx = s * &*x + t * &*y;
        let ny = u * &*x + v * &*y;
        *x = nx;
        *y = ny;
    }
}

fn two_rows(m: &mut [Vec<BigInt>], i: usize, j: usize) -> (&mut Vec<BigInt>, &mut Vec<BigInt>) {
    assert!(i < j);
    let (lo, hi) = m.split_at_mut(j);
    (&mut lo[i], &mut hi[0])
}

/// Hermite normal form `H = U * M` with `U` unimodular.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let nr = m.nrows();
    let nc = m.ncols();
    let mut a = m.rows.clone();
    let mut u = IntegerMatrix::identity(nr).rows;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        for i in r + 1..nr {
            if a[i][c].is_zero() {
                continue;
            }
            let (g, s, t) = xgcd(&a[r][c], &a[i][c]);
            let p = -(&a[i][c] / &g);
            let q = &a[r][c] / &g;
            let (ar, ai) = two_rows(&mut a, r, i);
            row_combine(ar, ai, &s, &t, &p, &q);
            let (ur, ui) = two_rows(&mut u, r, i);
            row_combine(ur, ui, &s, &t, &p, &q);
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            a[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..nc {
                let d = &q * &a[r][j];
                a[i][j] -= d;
            }
            for j in 0..nr {
                let d = &q * &u[r][j];
                u[i][j] -= d;
            }
        }
        r += 1;
    }
    (IntegerMatrix::new(a, nc), IntegerMatrix::new(u, nr))
}

/// Square HNF of the full-rank lattice spanned by `gens` together with
/// `d * Z^n`; all arithmetic is reduced modulo `d`.
pub fn hnf_mod(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> IntegerMatrix {
    assert!(d.is_positive(), "modulus must be positive");
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = d.clone();
            r
        })
        .collect();
    for g in gens {
        let mut v: Vec<BigInt> = g.iter().map(|x| x.mod_floor(d)).collect();
        for c in 0..n {
            if v[c].is_zero() {
                continue;
            }
            let (gg, s, t) = xgcd(&h[c][c], &v[c]);
            let p = -(&v[c] / &gg);
            let q = &h[c][c] / &gg;
            row_combine(&mut h[c], &mut v, &s, &t, &p, &q);
            for x in h[c].iter_mut().chain(v.iter_mut()) {
                *x = x.mod_floor(d);
            }
            if h[c][c].is_zero() {
                h[c][c] = d.clone();
            }
        }
    }
    normalize_upper(&mut h);
    IntegerMatrix::new(h, n)
}

/// Reduce an upper-triangular square basis with positive pivots so entries
/// above each pivot lie in `[0, pivot)`.
fn normalize_upper(h: &mut [Vec<BigInt>]) {
    let n = h.len();
    for c in 0..n {
        if h[c][c].is_negative() {
            h[c].iter_mut().for_each(|x| *x = -&*x);
        }
    }
    for c in 0..n {
        let piv = h[c][c].clone();
        if piv.is_zero() {
            continue;
        }
        for i in 0..c {
            let q = h[i][c].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for j in c..n {
                let d = &q * &h[c][j];
                h[i][j] -= d;
            }
        }
    }
}

/// Incrementally maintained HNF of a (possibly rank-deficient) integer
/// lattice; rows are indexed by pivot column.
#[derive(Clone, Debug)]
pub struct HnfBasis {
    ncols: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
}

impl HnfBasis {
    pub fn new(ncols: usize) -> Self {
        HnfBasis { ncols, pivots: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// Adds `v` to the lattice; returns whether the lattice changed.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        let mut changed = false;
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            match &mut self.pivots[c] {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.pivots[c] = Some(v);
                    self.reduce_all();
                    return true;
                }
                Some(h) => {
                    if (&v[c] % &h[c]).is_zero() {
                        let q = &v[c] / &h[c];
                        for (x, y) in v.iter_mut().zip(h.iter()) {
                            *x -= &q * y;
                        }
                        continue;
                    }
                    let (g, s, t) = xgcd(&h[c], &v[c]);
                    let p = -(&v[c] / &g);
                    let q = &h[c] / &g;
                    row_combine(h, &mut v, &s, &t, &p, &q);
                    changed = true;
                }
            }
        }
        if changed {
            self.reduce_all();
        }
        changed
    }

    fn reduce_all(&mut self) {
        for c in 0..self.ncols {
            let Some(row) = self.pivots[c].clone() else { continue };
            let piv = row[c].clone();
            for i in 0..c {
                if let Some(r) = &mut self.pivots[i] {
                    let q = r[c].div_floor(&piv);
                    if !q.is_zero() {
                        for j in c..self.ncols {
                            r[j] -= &q * &row[j];
                        }
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            match &self.pivots[c] {
                None => return false,
                Some(h) => {
                    if !(&v[c] % &h[c]).is_zero() {
                        return false;
                    }
                    let q = &v[c] / &h[c];
                    for (x, y) in v.iter_mut().zip(h.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
        true
    }

    /// Square matrix with zero rows where a column has no pivot.
    pub fn to_square(&self) -> IntegerMatrix {
        let rows = self
            .pivots
            .iter()
            .map(|p| p.clone().unwrap_or_else(|| vec![BigInt::zero(); self.ncols]))
            .collect();
        IntegerMatrix::new(rows, self.ncols)
    }

    pub fn pivot_product(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (c, p) in self.pivots.iter().enumerate() {
            acc *= &p.as_ref()?[c];
        }
        Some(acc)
    }
}

/// Smith normal form `U * M * V = diag(d_1, ..., d_k, 0, ...)`, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

pub fn snf(m: &IntegerMatrix) -> Snf {
    let nr = m.nrows();
    let nc = m.ncols();
    let mut a = m.rows.clone();
    let mut u = IntegerMatrix::identity(nr).rows;
    let mut v = IntegerMatrix::identity(nc).rows;
    let mut vi = IntegerMatrix::identity(nc).rows;
    let kmax = nr.min(nc);
    let mut diag = Vec::new();

    // column ops helpers: col_j -= q col_k on a and v; row_k(vi) += q row_j(vi)
    fn col_sub(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], vi: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let d = q * &row[k];
            row[j] -= d;
        }
        for row in v.iter_mut() {
            let d = q * &row[k];
            row[j] -= d;
        }
        let rj = vi[j].clone();
        for (x, y) in vi[k].iter_mut().zip(rj.iter()) {
            *x += q * y;
        }
    }
    fn col_swap(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], vi: &mut [Vec<BigInt>], j: usize, k: usize) {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(j, k);
        }
        vi.swap(j, k);
    }
    fn row_sub(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
        let rk = a[k].clone();
        for (x, y) in a[i].iter_mut().zip(rk.iter()) {
            *x -= q * y;
        }
        let uk = u[k].clone();
        for (x, y) in u[i].iter_mut().zip(uk.iter()) {
            *x -= q * y;
        }
    }

    for k in 0..kmax {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(pi, k);
        u.swap(pi, k);
        col_swap(&mut a, &mut v, &mut vi, pj, k);
        loop {
            let mut clean = true;
            for i in k + 1..nr {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[k][k]);
                row_sub(&mut a, &mut u, i, k, &q);
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..nc {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor(&a[k][k]);
                col_sub(&mut a, &mut v, &mut vi, j, k, &q);
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remaining entry of row/column k to the pivot
                let mut bi = k;
                let mut bj = k;
                for i in k + 1..nr {
                    if !a[i][k].is_zero() && a[i][k].abs() < a[bi][bj].abs() {
                        bi = i;
                        bj = k;
                    }
                }
                for j in k + 1..nc {
                    if !a[k][j].is_zero() && a[k][j].abs() < a[bi][bj].abs() {
                        bi = k;
                        bj = j;
                    }
                }
                if bi != k {
                    a.swap(bi, k);
                    u.swap(bi, k);
                }
                if bj != k {
                    col_swap(&mut a, &mut v, &mut vi, bj, k);
                }
                continue;
            }
            // divisibility condition on the trailing block
            let mut bad = None;
            'outer: for i in k + 1..nr {
                for j in k + 1..nc {
                    if !(&a[i][j] % &a[k][k]).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row_k += row_i
                    let m1 = -BigInt::one();
                    row_sub(&mut a, &mut u, k, i, &m1);
                }
                None => break,
            }
        }
        if a[k][k].is_negative() {
            a[k].iter_mut().for_each(|x| *x = -&*x);
            u[k].iter_mut().for_each(|x| *x = -&*x);
        }
        diag.push(a[k][k].clone());
    }
    Snf {
        diag,
        u: IntegerMatrix::new(u, nr),
        v: IntegerMatrix::new(v, nc),
        v_inv: IntegerMatrix::new(vi, nc),
    }
}

// ---------------------------------------------------------------------------
// Rational matrices

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn rat_identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![BigRational::zero(); m];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    out[j] += x * &b[k][j];
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn rat_vec_mul(v: &[BigRational], m: &RatMatrix) -> Vec<BigRational> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigRational::zero(); ncols];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for j in 0..ncols {
            out[j] += x * &m[k][j];
        }
    }
    out
}

pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        let pivot_row = a[c].clone();
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                *x -= &f * y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let pr = a[r].clone();
        for i in r + 1..nr {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pr[c];
            for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                *x -= &f * y;
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

pub fn rat_det(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let den = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    BigRational::new(det_bareiss(&rows), den.pow(n as u32))
}

pub fn int_to_rat_matrix(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

// ---------------------------------------------------------------------------
// Matrices over F_p, p < 2^32

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Row echelon form over F_p in place; returns pivot columns.
pub fn echelon_mod_p(a: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(pi) = (r..nr).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(pi, r);
        let inv = invmod(a[r][c] % p, p);
        for x in a[r].iter_mut() {
            *x = mulmod(*x % p, inv, p);
        }
        let pr = a[r].clone();
        for i in 0..nr {
            if i == r {
                continue;
            }
            let f = a[i][c] % p;
            if f == 0 {
                continue;
            }
            for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                *x = (*x % p + p - mulmod(f, *y, p)) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    echelon_mod_p(&mut a, p).len()
}

/// Basis of `{x : M x = 0}` over F_p.
pub fn nullspace_mod_p(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let pivots = echelon_mod_p(&mut a, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - a[r][f] % p) % p;
            }
            x
        })
        .collect()
}

/// Basis of `{y : y M = 0}` over F_p (left kernel).
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let t: Vec<Vec<u64>> = (0..nc).map(|j| (0..nr).map(|i| m[i][j]).collect()).collect();
    nullspace_mod_p(&t, nr, p)
}
