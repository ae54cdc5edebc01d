//! Exact rational scalars and their string encoding.
//!
//! Every quantity in the crate is a [`Rational`]. The textual form is
//! `"numerator/denominator"`, with integers written without a denominator
//! (`"3"`, `"-5/3"`). Decimal and floating point notation is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}`: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt, ParseRationalError> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or `numerator/denominator`"));
        }
        x.parse::<BigInt>()
            .map_err(|_| err("expected an integer or `numerator/denominator`"))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter: a single rational as a string.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter: a list of rationals as a list of strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}
