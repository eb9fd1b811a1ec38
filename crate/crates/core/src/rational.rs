//! Exact rational scalars and their text form.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. Returns `None` on malformed input or a zero
/// denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn positive_part(q: &Rational) -> Rational {
    if q.is_positive() {
        q.clone()
    } else {
        Rational::zero()
    }
}
