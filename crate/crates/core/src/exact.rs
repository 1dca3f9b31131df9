//! Exact rational arithmetic used for every theoretical moment.
//!
//! Values are `BigRational`, always normalized (lowest terms, positive
//! denominator). Decimals only appear when a value is rendered.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// `num / den` as a normalized rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

/// Binomial coefficient with the convention `binom(a, b) = 0` when
/// `a < b`, `a < 0` or `b < 0`.
pub fn binom(a: i64, b: i64) -> u128 {
    if b < 0 || a < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Fraction string such as `347/90`; integers print without a denominator.
pub fn fraction_string(value: &Rational) -> String {
    value.to_string()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        value.numer().to_f64().unwrap_or(f64::NAN) / value.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Decimal rendering with 12 significant digits, computed from the exact
/// value by long division (no binary floating point involved).
pub fn decimal_string(value: &Rational) -> String {
    const DIGITS: usize = 12;
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let numer = value.numer().abs();
    let denom = value.denom().clone();

    let int_part = &numer / &denom;
    let int_digits = if int_part.is_zero() {
        0
    } else {
        int_part.to_string().len()
    };
    // Leading zeros after the point for |value| < 1.
    let mut leading = 0usize;
    if int_part.is_zero() {
        let mut r = numer.clone();
        let ten = BigInt::from(10);
        while &r * &ten < denom {
            r *= &ten;
            leading += 1;
        }
    }
    let frac_digits = if int_digits >= DIGITS {
        0
    } else if int_digits > 0 {
        DIGITS - int_digits
    } else {
        leading + DIGITS
    };

    // Round half away from zero at `frac_digits` places.
    let scale = BigInt::from(10).pow(frac_digits as u32);
    let scaled = &numer * &scale;
    let (q, r) = scaled.div_rem(&denom);
    let q = if &r * BigInt::from(2) >= denom {
        q + 1
    } else {
        q
    };

    let digits = q.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if frac_digits == 0 {
        out.push_str(&digits);
    } else {
        let padded = format!("{:0>width$}", digits, width = frac_digits + 1);
        let (ip, fp) = padded.split_at(padded.len() - frac_digits);
        out.push_str(ip);
        out.push('.');
        out.push_str(fp);
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// Serialized form of an exact moment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for ExactValue {
    fn from(value: &Rational) -> Self {
        Self {
            exact: fraction_string(value),
            decimal: decimal_string(value),
        }
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    text.trim().parse::<Rational>().ok()
}

/// Serde adapter writing a rational as its fraction string.
pub mod rational_str {
    use super::{fraction_string, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fraction_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("`{text}` is not a fraction")))
    }
}

/// Like [`rational_str`] for optional values; `None` is an empty field.
pub mod rational_str_opt {
    use super::{fraction_string, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&fraction_string(v)),
            None => s.serialize_str(""),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?.unwrap_or_default();
        if text.is_empty() {
            return Ok(None);
        }
        parse_rational(&text)
            .map(Some)
            .ok_or_else(|| D::Error::custom(format!("`{text}` is not a fraction")))
    }
}
