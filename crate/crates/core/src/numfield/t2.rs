//! The positive-definite form T2(x) = sum over all embeddings of |sigma(x)|^2
//! on integral-basis coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::NumberField;
use crate::exactmath::matrix::RatMatrix;

#[derive(Clone, Debug)]
pub enum T2Form {
    /// Integral Gram matrix `Tr(w_i * conj(w_j))`; available for totally real
    /// fields and for fields with a recorded CM conjugation.
    Exact(Vec<Vec<BigInt>>),
    Float(Vec<Vec<f64>>),
}

impl T2Form {
    pub fn is_exact(&self) -> bool {
        matches!(self, T2Form::Exact(_))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            T2Form::Exact(g) => g.iter().map(|r| r.iter().map(crate::exactmath::poly::bigint_to_f64).collect()).collect(),
            T2Form::Float(g) => g.clone(),
        }
    }

    pub fn to_rat(&self) -> Option<RatMatrix> {
        match self {
            T2Form::Exact(g) => Some(crate::exactmath::matrix::int_to_rat_matrix(g)),
            T2Form::Float(_) => None,
        }
    }

    pub fn eval_f64(&self, v: &[f64]) -> f64 {
        let g = self.to_f64();
        let mut s = 0.0;
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                s += v[i] * x * v[j];
            }
        }
        s
    }
}

impl NumberField {
    pub fn t2_form(&self) -> T2Form {
        let n = self.degree();
        let unit = |i: usize| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = 1.into();
            v
        };
        if self.is_totally_real() || self.cm_conjugation().is_some() {
            let conj = self.cm_conjugation();
            let mut g = vec![vec![BigInt::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    let bj = match conj {
                        Some(m) if !self.is_totally_real() => m[j].clone(),
                        _ => unit(j),
                    };
                    let t = self.trace_int(&self.mul_int(&unit(i), &bj));
                    g[i][j] = t.clone();
                    g[j][i] = t;
                }
            }
            return T2Form::Exact(g);
        }
        let (r1, _) = self.signature();
        let emb = self.basis_embeddings();
        let mut g = vec![vec![0.0; n]; n];
        for (k, row) in emb.iter().enumerate() {
            let w = if k < r1 { 1.0 } else { 2.0 };
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += w * (row[i] * row[j].conj()).re;
                }
            }
        }
        T2Form::Float(g)
    }

    /// Exact T2 value of an element with rational coordinates, when the form is exact.
    pub fn t2_exact(&self, coords: &[BigRational]) -> Option<BigRational> {
        let g = match self.t2_form() {
            T2Form::Exact(g) => g,
            T2Form::Float(_) => return None,
        };
        let mut s = BigRational::zero();
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                s += &coords[i] * BigRational::from_integer(x.clone()) * &coords[j];
            }
        }
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use crate::exactmath::poly::BigIntPoly;
    use crate::numfield::build_field;

    #[test]
    fn exact_matches_float() {
        for c in [&[-1i64, -3, 0, 1][..], &[3, 0, 1], &[-2, 0, 1], &[1, 1, 0, 1]] {
            let k = build_field(&BigIntPoly::from_i64(c)).unwrap();
            let t = k.t2_form();
            let (r1, _) = k.signature();
            let emb = k.basis_embeddings();
            let n = k.degree();
            let mut f = vec![vec![0.0; n]; n];
            for (e, row) in emb.iter().enumerate() {
                let w = if e < r1 { 1.0 } else { 2.0 };
                for i in 0..n {
                    for j in 0..n {
                        f[i][j] += w * (row[i] * row[j].conj()).re;
                    }
                }
            }
            let g = t.to_f64();
            for i in 0..n {
                for j in 0..n {
                    assert!((g[i][j] - f[i][j]).abs() < 1e-8, "{c:?}");
                }
            }
        }
    }
}
