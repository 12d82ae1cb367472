//! Exact rational scalars.
//!
//! Coefficients are always stored reduced with a positive denominator
//! (guaranteed by `num_rational::Ratio`), so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The scalar type used throughout: an arbitrary-precision reduced fraction.
pub type Q = BigRational;

/// `n` as an exact rational.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn q_ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p/q"` or `"p"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q, crate::Error> {
    let t = s.trim();
    let bad = |why: &str| crate::Error::Parse(format!("bad rational {s:?}: {why}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(num, den))
}

/// Render as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// True if `x` is an integer.
pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}
