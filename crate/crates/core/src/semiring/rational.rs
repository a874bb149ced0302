use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ConditionalStrategy, Semiring};
use crate::{Error, Result};

/// Exact rationals in canonical reduced form (positive denominator).
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.72"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal {text:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if s.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int_digits}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(digits, scale);
        return Ok(if negative { -value } else { value });
    }
    let value: Rational = s.parse().map_err(|_| bad())?;
    Ok(value)
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn rational_to_decimal(value: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let rest = scaled - Rational::from_integer(floor.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = if rest >= half { floor + 1 } else { floor };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
}

fn rounded_is_zero(int_part: &BigInt, frac_part: &BigInt) -> bool {
    int_part.is_zero() && frac_part.is_zero()
}

impl Semiring for Rational {
    const NAME: &'static str = "rational";
    const IS_ENTIRE: bool = true;
    const CONDITIONALS: ConditionalStrategy = ConditionalStrategy::Division;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    /// Field division; `0 / 0` yields `0`, any other division by zero is undefined.
    fn try_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return Zero::is_zero(self).then(Zero::zero);
        }
        Some(self / divisor)
    }

    fn order(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}
