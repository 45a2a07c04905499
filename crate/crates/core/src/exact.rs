//! Exact rational helpers shared by every module.
//!
//! Everything numeric in this crate is an integer or a [`Q`]; nothing is ever
//! rounded. Rationals render as `p/q` (or `p` when integral).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// Integral value of `x` when it fits in an `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// `p/q`, or `p` for integers.
pub fn render(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the [`render`] format back into a rational.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// `#[serde(with = "crate::exact::serde_q")]` for a single rational.
pub mod serde_q {
    use super::{parse, render, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}")))
    }
}

/// Same as [`serde_q`] for `Option<Q>`.
pub mod serde_opt_q {
    use super::{parse, render, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&render(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(s) => parse(&s)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))),
            None => Ok(None),
        }
    }
}
