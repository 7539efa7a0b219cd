mod ideal;
mod prime;
mod ramify;

pub use ideal::IntegralIdeal;
pub use prime::{factor_rational_prime, stv_sets, valuation, PrimeIdealFactor, SplittingData};
pub use ramify::{ramified_primes_in_quadratic_ext, RamificationReport};
