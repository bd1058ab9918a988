//! Extended exponents `p ∈ (0, ∞]`, stored by their exact reciprocal.
//!
//! Every region condition in [`crate::regions`] is linear in reciprocals, so
//! keeping `1/p` as an exact fraction turns `p = ∞` into the ordinary value
//! `0` and makes boundary membership decidable without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational used by all verdict predicates.
pub type Rational = Ratio<i128>;

/// Shorthand for `Rational::new(n, d)`.
pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Exponent `p ∈ (0, ∞]` stored as `1/p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtendedExponent {
    recip: Rational,
}

impl ExtendedExponent {
    /// `p = ∞`.
    pub const fn infinity() -> Self {
        Self {
            recip: Ratio::new_raw(0, 1),
        }
    }

    /// Builds the exponent whose reciprocal is `recip`. `recip = 0` is `p = ∞`.
    pub fn from_reciprocal(recip: Rational) -> Result<Self> {
        if recip.is_negative() {
            return Err(Error::ExponentDomain(format!(
                "reciprocal {recip} is negative"
            )));
        }
        Ok(Self { recip })
    }

    /// Builds a finite exponent `p > 0`.
    pub fn finite(p: Rational) -> Result<Self> {
        if !p.is_positive() {
            return Err(Error::ExponentDomain(format!("p = {p} is not positive")));
        }
        Ok(Self { recip: p.recip() })
    }

    /// Finite integer exponent; panics on `p == 0` since that is a programming error.
    pub fn int(p: i64) -> Self {
        assert!(p > 0, "exponent must be positive");
        Self {
            recip: rat(1, p as i128),
        }
    }

    /// Exponent from a floating-point value. `f64::INFINITY` maps to `∞`.
    ///
    /// Uses the shortest decimal representation of `p`, so `0.25` becomes
    /// exactly `1/4`.
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            return Ok(Self::infinity());
        }
        if !p.is_finite() {
            return Err(Error::ExponentDomain(format!("p = {p} is not a number")));
        }
        format!("{p}").parse()
    }

    pub fn reciprocal(&self) -> Rational {
        self.recip
    }

    pub fn recip_f64(&self) -> f64 {
        self.recip.to_f64().unwrap_or(f64::NAN)
    }

    /// `p` as a float, `f64::INFINITY` for `p = ∞`.
    pub fn p_f64(&self) -> f64 {
        if self.recip.is_zero() {
            f64::INFINITY
        } else {
            self.recip.recip().to_f64().unwrap_or(f64::NAN)
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.recip.is_zero()
    }

    /// `p ∧ 2 = min(p, 2)`.
    pub fn meet2(&self) -> Self {
        Self {
            recip: self.recip.max(rat(1, 2)),
        }
    }

    /// `p ∨ 2 = max(p, 2)`.
    pub fn join2(&self) -> Self {
        Self {
            recip: self.recip.min(rat(1, 2)),
        }
    }

    /// `ṗ = min(1, p)`.
    pub fn dot(&self) -> Self {
        Self {
            recip: self.recip.max(Rational::one()),
        }
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`; defined for `1 ≤ p ≤ ∞`.
    pub fn conjugate(&self) -> Result<Self> {
        if self.recip > Rational::one() {
            return Err(Error::ExponentDomain(format!(
                "conjugate undefined for p = {self} < 1"
            )));
        }
        Ok(Self {
            recip: Rational::one() - self.recip,
        })
    }

    pub fn is_banach(&self) -> bool {
        self.recip <= Rational::one()
    }
}

impl PartialOrd for ExtendedExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedExponent {
    /// Orders by `p`, so a larger reciprocal is a smaller exponent.
    fn cmp(&self, other: &Self) -> Ordering {
        other.recip.cmp(&self.recip)
    }
}

impl fmt::Display for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.recip.is_zero() {
            return write!(f, "inf");
        }
        let p = self.recip.recip();
        if p.is_integer() {
            write!(f, "{}", p.numer())
        } else {
            write!(f, "{}/{}", p.numer(), p.denom())
        }
    }
}

impl fmt::Debug for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={self}")
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, fr)) => (i, fr),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || frac_part.len() > 30
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i128.checked_pow(frac_part.len() as u32)?;
    Some(Rational::new(numer, denom))
}

/// Parses a nonnegative exact rational from `"a/b"`, a decimal, or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n = parse_decimal(n.trim())?;
        let d = parse_decimal(d.trim())?;
        if d.is_zero() {
            return None;
        }
        n / d
    } else {
        parse_decimal(body)?
    };
    Some(if neg { -value } else { value })
}

impl FromStr for ExtendedExponent {
    type Err = Error;

    /// Accepts `inf`, `infinity`, `∞`, decimals (`0.25`), integers and fractions (`4/3`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "inf" | "infinity" | "∞" | "+inf") {
            return Ok(Self::infinity());
        }
        let p = parse_rational(t).ok_or_else(|| Error::ExponentParse {
            input: s.to_string(),
            reason: "expected inf, a decimal, or a fraction a/b".into(),
        })?;
        Self::finite(p).map_err(|_| Error::ExponentParse {
            input: s.to_string(),
            reason: "exponent must be positive".into(),
        })
    }
}

impl Serialize for ExtendedExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Num(x) => Self::from_f64(x).map_err(serde::de::Error::custom),
        }
    }
}
