//! Scalar field shared by every coefficient in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `int` or `int/posint`, e.g. `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |message: &str| Error::Parse {
        position: 1,
        message: format!("{message} in rational `{text}`"),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad("expected integer numerator"))?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad("expected positive denominator"));
            }
            d.parse().map_err(|_| bad("expected positive denominator"))?
        }
        None => BigInt::one(),
    };
    if !den.is_positive() {
        return Err(bad("expected positive denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    ((n - k + 1)..=n).fold(Rational::one(), |acc, v| acc * int(v as i64))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    (0..exp).fold(Rational::one(), |acc, _| acc * base)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
