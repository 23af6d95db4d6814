//! Exact rational numbers over `i128`.
//!
//! The magnitudes in this crate are bounded by the enumeration caps (indices
//! below 25, scan ranges below a few hundred thousand), so reduced `i128`
//! ratios have ample headroom; overflow would panic rather than wrap.

use alloc::string::String;
use core::fmt;

pub use num_rational::Ratio;

/// The exact rational type used throughout the crate.
pub type Rational = Ratio<i128>;

/// Shorthand constructor; reduces and normalizes the sign.
pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Error from [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational {:?}: expected `p` or `p/q`", self.0)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `p` or `p/q` with optional leading minus.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(String::from(text));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: i128 = num.trim().parse().map_err(|_| err())?;
    let den: i128 = den.trim().parse().map_err(|_| err())?;
    if den == 0 {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Formats as `p` for integers and `p/q` otherwise; the inverse of
/// [`parse_rational`] on reduced values.
pub fn format_rational(value: &Rational) -> String {
    use alloc::format;
    if value.is_integer() {
        format!("{}", value.numer())
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/12", "7/66", "-5/8"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(format_rational(&v), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
