mod element;
mod field;
mod iso;
mod precise;
mod relquad;
mod t2;

pub use element::AlgebraicNumber;
pub use field::{build_field, newton_power_sums, Field, MaximalityCertificate, NumberField, MAX_FIELD_DEGREE};
pub(crate) use field::{radical_mod_p, reduce_u64, ModTable};
pub use iso::{eval_poly_at, integral_roots_in, is_isomorphic};
pub use relquad::{adjoin_sqrt_minus3, adjoin_sqrt_neg, RelativeQuadraticData};
pub use t2::T2Form;
