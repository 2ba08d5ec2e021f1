//! Clustering parameters.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Decimal places accepted in an epsilon string. Keeps the squared
/// threshold comparison inside `u128`.
pub const MAX_EPSILON_DIGITS: usize = 9;

/// Similarity threshold held both as a double and as the exact decimal
/// fraction `num / den` it was written as.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilon {
    num: u64,
    den: u64,
    value: f64,
}

impl Epsilon {
    /// Parses a plain decimal such as `0.6`, `.25` or `1`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("epsilon {s:?} is not a decimal in (0, 1]"));
        let s = s.trim();
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.len() > MAX_EPSILON_DIGITS {
            return Err(Error::InvalidParameter(format!(
                "epsilon {s:?} has more than {MAX_EPSILON_DIGITS} decimal places"
            )));
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac_part.len() as u32);
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac_val))
            .ok_or_else(bad)?;
        if num == 0 || num > den {
            return Err(bad());
        }
        Ok(Epsilon {
            num,
            den,
            value: num as f64 / den as f64,
        })
    }

    /// Converts a double through its shortest decimal representation.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon {x} is not finite")));
        }
        Self::parse(&format!("{x}"))
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The exact fraction as `(numerator, denominator)`.
    pub fn fraction(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    /// `shared / sqrt(size_a * size_b) >= epsilon`, evaluated exactly as
    /// `shared^2 * den^2 >= num^2 * size_a * size_b`.
    #[inline]
    pub fn admits(&self, shared: u64, size_a: u64, size_b: u64) -> bool {
        let lhs = (shared as u128 * shared as u128) * (self.den as u128 * self.den as u128);
        let rhs = (self.num as u128 * self.num as u128) * (size_a as u128 * size_b as u128);
        lhs >= rhs
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Epsilon::parse(s)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `(mu, epsilon)` pair, validated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub mu: u32,
    pub epsilon: Epsilon,
}

impl Params {
    pub fn new(mu: u32, epsilon: Epsilon) -> Result<Self> {
        if mu < 2 {
            return Err(Error::InvalidParameter(format!("mu = {mu}; must be at least 2")));
        }
        Ok(Params { mu, epsilon })
    }

    /// Parses `epsilon` and validates both values, e.g. `Params::parse(3, "0.6")`.
    pub fn parse(mu: u32, epsilon: &str) -> Result<Self> {
        Self::new(mu, Epsilon::parse(epsilon)?)
    }
}
