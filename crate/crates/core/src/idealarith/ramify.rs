//! Base primes ramifying in a relative quadratic extension.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::prime::{factor_rational_prime, PrimeIdealFactor};
use crate::error::Result;
use crate::exactmath::intfactor::factor_u64;
use crate::numfield::RelativeQuadraticData;

#[derive(Clone, Debug)]
pub struct RamificationReport {
    pub ramified: Vec<PrimeIdealFactor>,
    pub gamma: usize,
    /// |disc L| / disc K^2, the absolute norm of the relative discriminant.
    pub relative_disc_norm: BigInt,
    /// Whether the product of N(P)^(valuation bound) over ramified P has
    /// exactly the rational primes of `relative_disc_norm`.
    pub disc_cross_check: bool,
}

/// Base primes P with P*O_L = Q^2; found by factoring in L directly.
pub fn ramified_primes_in_quadratic_ext(rel: &RelativeQuadraticData) -> Result<RamificationReport> {
    let base = rel.base();
    let top = rel.top();
    let dk = base.disc();
    let rel_norm = top.disc().abs() / (dk * dk);
    // only primes dividing 4d can ramify
    let mut qs: Vec<u64> = factor_u64(4 * rel.d() as u64).into_iter().map(|(q, _)| q).collect();
    qs.sort_unstable();
    let mut ramified = Vec::new();
    for &q in &qs {
        let low = factor_rational_prime(base, q)?;
        let high = factor_rational_prime(top, q)?;
        for p in &low.factors {
            let gens: Vec<Vec<BigInt>> = p.ideal().basis().iter().map(|b| rel.embed_int(b)).collect();
            let above: Vec<&PrimeIdealFactor> =
                high.factors.iter().filter(|big| gens.iter().all(|g| big.ideal().contains(g))).collect();
            if above.len() == 1 && above[0].e() == 2 * p.e() {
                ramified.push(p.clone());
            }
        }
    }
    let rad_ok = {
        let primes_rel: Vec<u64> = rel_norm
            .to_u64()
            .map(|m| factor_u64(m).into_iter().map(|(q, _)| q).collect())
            .unwrap_or_default();
        let mut from_ram: Vec<u64> = ramified.iter().map(|p| p.p()).collect();
        from_ram.sort_unstable();
        from_ram.dedup();
        // every ramified P lies over a prime dividing the relative discriminant
        // norm and vice versa
        let norm_div = ramified.iter().all(|p| rel_norm.is_multiple_of(&p.norm()));
        primes_rel == from_ram && norm_div
    };
    Ok(RamificationReport { gamma: ramified.len(), ramified, relative_disc_norm: rel_norm, disc_cross_check: rad_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::BigIntPoly;
    use crate::numfield::{adjoin_sqrt_minus3, build_field};

    fn gamma(c: &[i64]) -> RamificationReport {
        let k = build_field(&BigIntPoly::from_i64(c)).unwrap();
        ramified_primes_in_quadratic_ext(&adjoin_sqrt_minus3(&k).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let r = gamma(&[0, 1]);
        assert_eq!(r.gamma, 1);
        assert_eq!(r.ramified[0].p(), 3);
        assert!(r.disc_cross_check);
        let r = gamma(&[-13, 0, 1]);
        assert_eq!(r.gamma, 2);
        assert!(r.ramified.iter().all(|p| p.p() == 3));
        assert!(r.disc_cross_check);
        let r = gamma(&[-1, -3, 0, 1]);
        assert_eq!(r.gamma, 1);
        assert!(r.disc_cross_check);
    }
}
