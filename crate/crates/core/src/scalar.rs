//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], an exact field built on
//! top of `num-traits`. The blanket implementation covers every
//! [`num_rational::Ratio`] over a signed integer type, so the arbitrary
//! precision [`crate::Rational`] and the machine-word [`crate::Rational64`]
//! both qualify. Floating point types deliberately do not: membership tests
//! and identity checks compare against zero with no tolerance.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

use crate::error::ExactError;

/// An exact field usable as the coefficient ring of a triple system.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Builds `num / den` in canonical form.
    fn ratio(num: i64, den: i64) -> Result<Self, ExactError>;

    /// Parses the text form `p` or `p/q` (`q > 0`, optional leading minus on
    /// `p`, no whitespace). Non-reduced fractions are accepted and reduced.
    fn parse_literal(text: &str) -> Result<Self, ExactError>;
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn ratio(num: i64, den: i64) -> Result<Self, ExactError> {
        rat_canon(T::from(num), T::from(den))
    }

    fn parse_literal(text: &str) -> Result<Self, ExactError> {
        let bad = || ExactError::Parse(text.to_string());
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let digits = num_text.strip_prefix('-').unwrap_or(num_text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = T::from_str(num_text).map_err(|_| bad())?;
        let den = match den_text {
            None => T::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                T::from_str(d).map_err(|_| bad())?
            }
        };
        rat_canon(num, den)
    }
}

/// Canonical fraction `num / den`: reduced, positive denominator, zero as `0/1`.
pub fn rat_canon<T>(num: T, den: T) -> Result<Ratio<T>, ExactError>
where
    T: Integer + Signed + Clone,
{
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Ratio::new(num, den))
}

/// Text form of a scalar: `p` for integers, `p/q` otherwise.
pub fn format_scalar<F: Scalar>(value: &F) -> String {
    value.to_string()
}
