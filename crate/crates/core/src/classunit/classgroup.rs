//! Relation harvesting, class group structure and principality search.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::enumerate::IdealLattice;
use super::units::{log_vector_elt, UnitLattice};
use crate::error::{Error, Result};
use crate::exactmath::intfactor::primes_up_to;
use crate::exactmath::lattice::lll_gram;
use crate::exactmath::matrix::{hnf, snf, HnfBasis, IntegerMatrix};
use crate::idealarith::{factor_rational_prime, IntegralIdeal, PrimeIdealFactor, SplittingData};
use crate::numfield::{AlgebraicNumber, Field, T2Form};

/// Sparse factorization: (index into the prime list, exponent).
pub(crate) type Sparse = Vec<(usize, u64)>;

pub(crate) struct PrimeTable {
    pub split: BTreeMap<u64, SplittingData>,
    /// All prime ideals of norm <= bound, sorted by (norm, p, position).
    pub list: Vec<PrimeIdealFactor>,
    pub index: HashMap<(u64, usize), usize>,
}

impl PrimeTable {
    pub fn new(field: &Field, bound: u64) -> Result<Self> {
        let ps = primes_up_to(bound);
        let splits: Vec<Result<SplittingData>> = ps.par_iter().map(|&p| factor_rational_prime(field, p)).collect();
        let mut split = BTreeMap::new();
        for (p, s) in ps.iter().zip(splits) {
            split.insert(*p, s?);
        }
        let mut keyed: Vec<(BigInt, u64, usize, PrimeIdealFactor)> = Vec::new();
        for (p, s) in &split {
            for (i, f) in s.factors.iter().enumerate() {
                if f.norm() <= BigInt::from(bound) {
                    keyed.push((f.norm(), *p, i, f.clone()));
                }
            }
        }
        keyed.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
        let index = keyed.iter().enumerate().map(|(k, (_, p, i, _))| ((*p, *i), k)).collect();
        let list = keyed.into_iter().map(|t| t.3).collect();
        Ok(PrimeTable { split, list, index })
    }

    /// Factorization of (x) over the table, or None if some prime factor
    /// has norm above the bound.
    pub fn factor(&self, field: &Field, x: &[BigInt]) -> Option<Sparse> {
        let mut nrm = field.norm_int(x).abs();
        if nrm.is_zero() {
            return None;
        }
        let mut out = Vec::new();
        for (&q, s) in &self.split {
            if nrm.is_one() {
                break;
            }
            let bq = BigInt::from(q);
            let mut vq = 0u64;
            while nrm.is_multiple_of(&bq) {
                nrm /= &bq;
                vq += 1;
            }
            if vq == 0 {
                continue;
            }
            let mut acc = 0u64;
            for (i, f) in s.factors.iter().enumerate() {
                if acc == vq {
                    break;
                }
                let v = f.valuation_int(x).ok()?;
                if v == 0 {
                    continue;
                }
                let &k = self.index.get(&(q, i))?;
                out.push((k, v));
                acc += v * u64::from(f.f());
            }
            if acc != vq {
                return None;
            }
        }
        if !nrm.is_one() {
            return None;
        }
        out.sort_unstable();
        Some(out)
    }
}

#[derive(Clone)]
pub(crate) struct Relation {
    pub elt: Vec<BigInt>,
    pub fact: Sparse,
    pub t2: f64,
}

/// Invariants of Z^k / L in Smith form together with the column transform.
#[derive(Clone, Debug)]
pub(crate) struct GroupStructure {
    /// Number of factor-base primes (a prefix of the prime table).
    pub k: usize,
    pub diag: Vec<BigInt>,
    pub v_inv: IntegerMatrix,
}

impl GroupStructure {
    pub fn invariants(&self) -> Vec<BigInt> {
        let mut d: Vec<BigInt> = self.diag.iter().filter(|x| !x.is_one()).cloned().collect();
        d.sort();
        d
    }

    pub fn order(&self) -> BigInt {
        self.diag.iter().product()
    }
}

fn structure_from(basis: &HnfBasis) -> Option<GroupStructure> {
    let k = basis.ncols();
    if basis.rank() < k {
        return None;
    }
    if k == 0 {
        return Some(GroupStructure {
            k,
            diag: vec![],
            v_inv: IntegerMatrix::identity(0),
        });
    }
    let s = snf(&basis.to_square());
    let diag: Vec<BigInt> = (0..k).map(|i| s.diag.get(i).cloned().unwrap_or_default().abs()).collect();
    if diag.iter().any(Zero::is_zero) {
        return None;
    }
    Some(GroupStructure { k, diag, v_inv: s.v_inv })
}

pub(crate) struct Engine {
    pub field: Field,
    pub t2: T2Form,
    pub table: PrimeTable,
    /// Factor base = first `k` entries of the table.
    pub k: usize,
    pub relations: Vec<Relation>,
    seen: HashSet<Vec<BigInt>>,
    /// Proven relations with no stored element.
    pub extra: Vec<Vec<BigInt>>,
    pub units: UnitLattice,
    lattices: HashMap<usize, IdealLattice>,
    order_lattice: Option<IdealLattice>,
}

const VISITS_PER_ROUND: usize = 4000;

impl Engine {
    pub fn new(field: &Field, bound: u64, k: usize) -> Result<Self> {
        let table = PrimeTable::new(field, bound)?;
        let k = k.min(table.list.len());
        let t2 = field.t2_form();
        let n = field.degree();
        let order_lattice = IdealLattice::new(&t2, &IntegerMatrix::identity(n).into_rows());
        Ok(Engine {
            field: field.clone(),
            t2,
            table,
            k,
            relations: Vec::new(),
            seen: HashSet::new(),
            extra: Vec::new(),
            units: UnitLattice::new(field),
            lattices: HashMap::new(),
            order_lattice,
        })
    }

    fn lattice_of(&mut self, i: usize) -> Option<&IdealLattice> {
        if !self.lattices.contains_key(&i) {
            let rows = self.table.list[i].ideal().basis().to_vec();
            let lat = IdealLattice::new(&self.t2, &rows)?;
            self.lattices.insert(i, lat);
        }
        self.lattices.get(&i)
    }

    fn dense(&self, fact: &Sparse) -> Option<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.k];
        for &(i, e) in fact {
            if i >= self.k {
                return None;
            }
            v[i] = BigInt::from(e);
        }
        Some(v)
    }

    /// One harvesting round: enumerate short elements of O and of each
    /// factor-base prime with a radius that grows with `round`.
    pub fn harvest(&mut self, round: usize) {
        let n = self.field.degree() as f64;
        // a few extra primes help the unit search when the factor base is tiny
        let hk = self.k.max(self.table.list.len().min(8));
        for i in 0..hk {
            self.lattice_of(i);
        }
        // large regulators need far-out elements; cheap while the unit
        // lattice is small
        let grow = if self.units.full() { 1.0 } else { 1.5f64.powi(round as i32) };
        let mut jobs: Vec<(&IdealLattice, f64)> = Vec::new();
        if let Some(o) = &self.order_lattice {
            jobs.push((o, n * (2.0 + round as f64) * grow));
        }
        let mut keys: Vec<&usize> = self.lattices.keys().filter(|&&i| i < hk).collect();
        keys.sort();
        for i in keys {
            let lat = &self.lattices[i];
            jobs.push((lat, lat.shortest_value() * (1.3 + 0.7 * round as f64) * grow));
        }
        let field = &self.field;
        let table = &self.table;
        let visits = VISITS_PER_ROUND * (1 + round);
        let found: Vec<Vec<Relation>> = jobs
            .par_iter()
            .map(|(lat, bound)| {
                let mut out = Vec::new();
                lat.for_each(*bound, visits, |x, val| {
                    if let Some(fact) = table.factor(field, &x) {
                        out.push(Relation { elt: x, fact, t2: val });
                    }
                    true
                });
                out
            })
            .collect();
        for r in found.into_iter().flatten() {
            self.add_relation(r);
        }
    }

    pub fn add_relation(&mut self, r: Relation) {
        let key = canonical_sign(&r.elt);
        if !self.seen.insert(key) {
            return;
        }
        if r.fact.is_empty() {
            self.units.add(AlgebraicNumber::from_int_coords(&self.field, &r.elt));
            return;
        }
        self.relations.push(r);
    }

    /// Units from pairs of relations with equal factorization.
    pub fn pair_units(&mut self) {
        let mut by_fact: HashMap<&Sparse, Vec<usize>> = HashMap::new();
        for (i, r) in self.relations.iter().enumerate() {
            by_fact.entry(&r.fact).or_default().push(i);
        }
        let mut quotients = Vec::new();
        let mut groups: Vec<&Vec<usize>> = by_fact.values().filter(|v| v.len() > 1).collect();
        groups.sort();
        for idx in groups {
            let a = AlgebraicNumber::from_int_coords(&self.field, &self.relations[idx[0]].elt);
            for &j in &idx[1..] {
                let b = AlgebraicNumber::from_int_coords(&self.field, &self.relations[j].elt);
                if let Ok(u) = a.div(&b) {
                    quotients.push(u);
                }
            }
        }
        for u in quotients {
            if u.is_integral() {
                self.units.add(u);
            }
        }
    }

    /// Units from small integer kernel vectors of the relation matrix.
    pub fn kernel_units(&mut self) {
        let mut rels: Vec<&Relation> = self.relations.iter().collect();
        rels.sort_by(|a, b| a.t2.total_cmp(&b.t2));
        // associates under roots of unity only contribute torsion
        let mut classes = HashSet::new();
        rels.retain(|r| {
            let logs: Vec<i64> = log_vector_elt(&AlgebraicNumber::from_int_coords(&self.field, &r.elt))
                .iter()
                .map(|x| (x * 1e6).round() as i64)
                .collect();
            classes.insert((r.fact.clone(), logs))
        });
        let mut cols: Vec<usize> = rels.iter().flat_map(|r| r.fact.iter().map(|&(i, _)| i)).collect();
        cols.sort_unstable();
        cols.dedup();
        let take = (cols.len() + 25).min(rels.len());
        let rels = &rels[..take];
        let mut cols: Vec<usize> = rels.iter().flat_map(|r| r.fact.iter().map(|&(i, _)| i)).collect();
        cols.sort_unstable();
        cols.dedup();
        let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let rows: Vec<Vec<BigInt>> = rels
            .iter()
            .map(|r| {
                let mut v = vec![BigInt::zero(); cols.len()];
                for &(i, e) in &r.fact {
                    v[pos[&i]] = BigInt::from(e);
                }
                v
            })
            .collect();
        if rows.is_empty() {
            return;
        }
        let (h, t) = hnf(&IntegerMatrix::new(rows, cols.len()));
        let kernel: Vec<Vec<BigInt>> = h
            .rows()
            .iter()
            .zip(t.rows())
            .filter(|(hr, _)| hr.iter().all(Zero::is_zero))
            .map(|(_, tr)| tr.clone())
            .collect();
        if kernel.is_empty() {
            return;
        }
        let gram: Vec<Vec<BigRational>> = kernel
            .iter()
            .map(|a| {
                kernel.iter().map(|b| BigRational::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum())).collect()
            })
            .collect();
        let Ok(red) = lll_gram(&gram) else { return };
        let gens: Vec<AlgebraicNumber> =
            rels.iter().map(|r| AlgebraicNumber::from_int_coords(&self.field, &r.elt)).collect();
        let mut found = Vec::new();
        for ur in red.u.rows() {
            let mut vec = vec![BigInt::zero(); rels.len()];
            for (c, kr) in ur.iter().zip(&kernel) {
                if c.is_zero() {
                    continue;
                }
                for (v, x) in vec.iter_mut().zip(kr) {
                    *v += c * x;
                }
            }
            let e: Option<Vec<i64>> = vec.iter().map(|x| x.to_i64().filter(|v| v.abs() <= 12)).collect();
            let Some(e) = e else { continue };
            if e.iter().map(|x| x.abs()).sum::<i64>() > 60 {
                continue;
            }
            // estimate the size of the resulting unit before multiplying out
            let logs: Vec<f64> = (0..self.field.signature().0 + self.field.signature().1)
                .map(|k| e.iter().zip(&gens).map(|(&c, g)| c as f64 * log_vector_elt(g)[k]).sum())
                .collect();
            if logs.iter().any(|x| x.abs() > 400.0) {
                continue;
            }
            let mut num = AlgebraicNumber::one(&self.field);
            let mut den = AlgebraicNumber::one(&self.field);
            for (g, &c) in gens.iter().zip(&e) {
                if c > 0 {
                    num = &num * &g.pow(c as u64);
                } else if c < 0 {
                    den = &den * &g.pow(c.unsigned_abs());
                }
            }
            if let Ok(u) = num.div(&den) {
                if u.is_integral() && u.norm().abs().is_one() {
                    found.push(u);
                }
            }
        }
        for u in found {
            self.units.add(u);
        }
    }

    pub fn relation_basis(&self) -> HnfBasis {
        let mut b = HnfBasis::new(self.k);
        for r in &self.relations {
            if let Some(v) = self.dense(&r.fact) {
                b.insert(&v);
            }
        }
        for v in &self.extra {
            b.insert(v);
        }
        b
    }

    pub fn structure(&self) -> Option<GroupStructure> {
        structure_from(&self.relation_basis())
    }

    /// Shows the table prime at `j` lies in the subgroup generated by the
    /// primes before it: finds x in P with v_P(x) = 1 and all other prime
    /// factors earlier in the table.
    pub fn verify_prime(&mut self, j: usize, effort: usize) -> bool {
        if self.lattice_of(j).is_none() {
            return false;
        }
        let lat = &self.lattices[&j];
        let field = &self.field;
        let table = &self.table;
        let mut ok = false;
        for round in 0..effort {
            let bound = lat.shortest_value() * (1.5 + round as f64);
            lat.for_each(bound, VISITS_PER_ROUND * (1 + round), |x, _| {
                if let Some(fact) = table.factor(field, &x) {
                    if fact.iter().all(|&(i, e)| i < j || (i == j && e == 1)) && fact.iter().any(|&(i, _)| i == j) {
                        ok = true;
                        return false;
                    }
                }
                true
            });
            if ok {
                return true;
            }
        }
        false
    }
}

pub(crate) fn canonical_sign(x: &[BigInt]) -> Vec<BigInt> {
    match x.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => x.iter().map(|c| -c).collect(),
        _ => x.to_vec(),
    }
}

/// Upper bound for T2 of some generator of a principal ideal of norm `norm`,
/// given units spanning a full-rank subgroup.
pub(crate) fn generator_t2_bound(field: &Field, units: &[AlgebraicNumber], norm: f64) -> f64 {
    let (r1, r2) = field.signature();
    let n = field.degree() as f64;
    let logs: Vec<Vec<f64>> = units.iter().map(log_vector_elt).collect();
    let base = norm.powf(2.0 / n);
    let mut total = 0.0;
    for i in 0..r1 + r2 {
        let d = if i < r1 { 1.0 } else { 2.0 };
        let m: f64 = 0.5 * logs.iter().map(|l| l[i].abs()).sum::<f64>();
        total += d * (2.0 * m / d).exp();
    }
    base * total * (1.0 + 1e-6)
}

/// Outcome of an exhaustive generator search.
pub(crate) enum Search {
    Found(Vec<BigInt>),
    Absent,
    Budget,
}

/// Looks for x in I with |N(x)| = N(I) among elements with T2 below the
/// generator bound. Requires a full-rank unit subgroup.
pub(crate) fn search_generator(
    ideal: &IntegralIdeal,
    t2: &T2Form,
    units: &[AlgebraicNumber],
    max_visits: usize,
) -> Search {
    let field = ideal.field();
    let nrm = ideal.norm().clone();
    if ideal.is_one() {
        return Search::Found(field.one_coords());
    }
    let nf = nrm.to_f64().unwrap_or(f64::INFINITY);
    let bound = generator_t2_bound(field, units, nf);
    let Some(lat) = IdealLattice::new(t2, ideal.basis()) else { return Search::Budget };
    let n = field.degree() as f64;
    let floor = n * nf.powf(2.0 / n) * (1.0 - 1e-6);
    let mut found = None;
    let complete = lat.for_each(bound, max_visits, |x, val| {
        if val >= floor && field.norm_int(&x).abs() == nrm {
            found = Some(x);
            return false;
        }
        true
    });
    match found {
        Some(x) => Search::Found(x),
        None if complete => Search::Absent,
        None => Search::Budget,
    }
}

/// Replaces I by J = (g) I^{-1} for a short g in I; returns (J, g).
pub(crate) fn reduce_ideal(ideal: &IntegralIdeal, t2: &T2Form) -> Option<(IntegralIdeal, Vec<BigInt>)> {
    let lat = IdealLattice::new(t2, ideal.basis())?;
    let best = (0..lat.basis.len()).min_by(|&a, &b| lat.gram[a][a].total_cmp(&lat.gram[b][b]))?;
    let g = &lat.basis[best];
    let pg = IntegralIdeal::principal_int(ideal.field(), g).ok()?;
    let j = pg.colon(ideal);
    Some((j, g.clone()))
}

/// Generator search with reduction: returns a verified generator, proof of
/// non-principality, or a budget failure.
pub(crate) fn principal_generator(
    ideal: &IntegralIdeal,
    t2: &T2Form,
    units: &[AlgebraicNumber],
    max_visits: usize,
) -> Search {
    let field = ideal.field();
    let direct = search_generator(ideal, t2, units, max_visits);
    if !matches!(direct, Search::Budget) {
        return direct;
    }
    let Some((j, g)) = reduce_ideal(ideal, t2) else { return Search::Budget };
    if j.norm() >= ideal.norm() {
        return Search::Budget;
    }
    match search_generator(&j, t2, units, max_visits) {
        Search::Found(d) => {
            let a = AlgebraicNumber::from_int_coords(field, &g);
            let b = AlgebraicNumber::from_int_coords(field, &d);
            match a.div(&b).ok().and_then(|q| q.int_coords()) {
                Some(c) => Search::Found(c),
                None => Search::Budget,
            }
        }
        other => other,
    }
}

/// Integral ideal with class equal to the exponent vector x (entries may be
/// negative): A * ((b) : B) for the positive part A, negative part B and a
/// short b in B.
pub(crate) fn ideal_of_exponents(table: &PrimeTable, t2: &T2Form, field: &Field, x: &[BigInt]) -> IntegralIdeal {
    let mut pos = IntegralIdeal::unit_ideal(field);
    let mut neg = IntegralIdeal::unit_ideal(field);
    for (i, e) in x.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let pw = table.list[i].ideal().pow(e.abs().to_u32().expect("small exponent"));
        if e.is_positive() {
            pos = pos.mul(&pw);
        } else {
            neg = neg.mul(&pw);
        }
    }
    if neg.is_one() {
        return pos;
    }
    let (c, _) = reduce_ideal(&neg, t2).expect("ideal lattice");
    pos.mul(&c)
}

/// All nonzero elements of G[l] up to scalars, as Smith coordinates.
pub(crate) fn torsion_elements(g: &GroupStructure, l: u64) -> Vec<Vec<BigInt>> {
    let bl = BigInt::from(l);
    let gens: Vec<usize> = (0..g.k).filter(|&i| g.diag[i].is_multiple_of(&bl) && !g.diag[i].is_zero()).collect();
    let mut out = Vec::new();
    let m = gens.len();
    if m == 0 {
        return out;
    }
    let total = (l as usize).pow(m as u32);
    for code in 1..total {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(m);
        for _ in 0..m {
            coeffs.push((c % l as usize) as u64);
            c /= l as usize;
        }
        // first nonzero coefficient equal to 1
        if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut y = vec![BigInt::zero(); g.k];
        for (&gi, &a) in gens.iter().zip(&coeffs) {
            y[gi] = (&g.diag[gi] / &bl) * a;
        }
        out.push(y);
    }
    out
}

/// Exponent vector (over the factor base) whose class has Smith coordinates y.
pub(crate) fn exponents_of(g: &GroupStructure, y: &[BigInt]) -> Vec<BigInt> {
    (0..g.k).map(|j| (0..g.k).map(|i| &y[i] * g.v_inv.get(i, j)).sum()).collect()
}

pub(crate) fn unit_error(what: &str) -> Error {
    Error::Inconclusive(format!("{what} did not settle within the effort budget"))
}
