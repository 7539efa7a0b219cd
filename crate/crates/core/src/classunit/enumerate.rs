//! LLL-reduced T2 lattices of ideals and short-element enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::exactmath::lattice::{lll_gram, FloatEnumerator};
use crate::exactmath::matrix::RatMatrix;
use crate::numfield::T2Form;

pub(crate) struct IdealLattice {
    /// Reduced basis rows in integral-basis coordinates.
    pub basis: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<f64>>,
    enumerator: FloatEnumerator,
}

fn gram_of_rows_int(g: &[Vec<BigInt>], rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let n = g.len();
    let gb: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| (0..n).map(|j| r.iter().zip(g).map(|(a, gr)| a * &gr[j]).sum()).collect())
        .collect();
    (0..m).map(|i| (0..m).map(|j| gb[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum()).collect()).collect()
}

fn gram_of_rows_f64(g: &[Vec<f64>], rows: &[Vec<BigInt>]) -> Vec<Vec<f64>> {
    let rf: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let m = rows.len();
    let n = g.len();
    let gb: Vec<Vec<f64>> =
        rf.iter().map(|r| (0..n).map(|j| r.iter().zip(g).map(|(a, gr)| a * gr[j]).sum()).collect()).collect();
    (0..m).map(|i| (0..m).map(|j| gb[i].iter().zip(&rf[j]).map(|(a, b)| a * b).sum()).collect()).collect()
}

impl IdealLattice {
    pub fn new(t2: &T2Form, rows: &[Vec<BigInt>]) -> Option<Self> {
        let (rat_gram, exact): (RatMatrix, Option<Vec<Vec<BigInt>>>) = match t2 {
            T2Form::Exact(g) => {
                let gi = gram_of_rows_int(g, rows);
                (gi.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(), Some(gi))
            }
            T2Form::Float(g) => {
                let gf = gram_of_rows_f64(g, rows);
                let scale = 2f64.powi(32);
                let approx: RatMatrix = gf
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|&x| {
                                BigRational::new(
                                    BigInt::from_f64((x * scale).round()).unwrap_or_default(),
                                    BigInt::from(1u64 << 32),
                                )
                            })
                            .collect()
                    })
                    .collect();
                (approx, None)
            }
        };
        let lll = lll_gram(&rat_gram).ok()?;
        let u = lll.u.rows();
        let n = rows[0].len();
        let basis: Vec<Vec<BigInt>> = u
            .iter()
            .map(|ur| {
                let mut v = vec![BigInt::zero(); n];
                for (c, r) in ur.iter().zip(rows) {
                    if c.is_zero() {
                        continue;
                    }
                    for (vk, rk) in v.iter_mut().zip(r) {
                        *vk += c * rk;
                    }
                }
                v
            })
            .collect();
        let gram = match (exact, t2) {
            (Some(_), T2Form::Exact(g)) => gram_of_rows_int(g, &basis)
                .iter()
                .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect())
                .collect(),
            (_, T2Form::Float(g)) => gram_of_rows_f64(g, &basis),
            _ => unreachable!(),
        };
        let enumerator = FloatEnumerator::from_f64(&gram)?;
        Some(IdealLattice { basis, gram, enumerator })
    }

    pub fn element(&self, x: &[i64]) -> Vec<BigInt> {
        let n = self.basis[0].len();
        let mut v = vec![BigInt::zero(); n];
        for (c, r) in x.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            let c = BigInt::from(*c);
            for (vk, rk) in v.iter_mut().zip(r) {
                *vk += &c * rk;
            }
        }
        v
    }

    /// Visits elements with T2 <= bound (one of each sign pair). Returns
    /// false if the visit budget ran out before the enumeration finished.
    pub fn for_each<F: FnMut(Vec<BigInt>, f64) -> bool>(&self, bound: f64, max_visits: usize, mut f: F) -> bool {
        let mut count = 0usize;
        let mut complete = true;
        self.enumerator.for_each(bound, |x, val| {
            count += 1;
            if count > max_visits {
                complete = false;
                return false;
            }
            f(self.element(x), val)
        });
        complete
    }

    pub fn shortest_value(&self) -> f64 {
        self.gram.iter().enumerate().map(|(i, r)| r[i]).fold(f64::INFINITY, f64::min)
    }
}
