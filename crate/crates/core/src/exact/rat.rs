use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad(s))?;
            let den: BigInt = den.trim().parse().map_err(|_| bad(s))?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rat::new(num, den)
        }
        None => Rat::from_integer(s.parse().map_err(|_| bad(s))?),
    };
    Ok(parsed)
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("invalid rational {s:?}"))
}

pub(crate) mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}
