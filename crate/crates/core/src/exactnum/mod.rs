//! Exact arithmetic: rationals, cyclotomic fields, polynomials in `n` and
//! truncated Laurent series in `eps`.

mod cyclotomic;
mod npoly;
mod series;

pub use cyclotomic::{cyclotomic_polynomial, CycField, CycNum};
pub use npoly::NPoly;
pub use series::EpsSeries;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
