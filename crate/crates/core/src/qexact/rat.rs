//! Text form of exact rationals: `p/q`, with `/q` omitted when `q = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rat;

use super::ParseError;

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `c1*name1 + c2*name2 ...` with unit coefficients elided and zero terms dropped.
pub fn format_combination<S: AsRef<str>>(coeffs: &[Rat], names: &[S]) -> String {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        let sep = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let coef = if mag.is_one() { String::new() } else { format!("{}*", format_rat(&mag)) };
        out.push_str(&format!("{sep}{coef}{}", n.as_ref()));
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Parses `p` or `p/q` (optional sign on `p`, `q` a positive integer).
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| ParseError::new(format!("invalid integer `{num}`")))?;
    let den = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(ParseError::new(format!("denominator must be a positive integer, got `{d}`")));
            }
            parse_int(d).ok_or_else(|| ParseError::new(format!("invalid denominator `{d}`")))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::new("zero denominator"));
    }
    debug_assert!(den.is_positive());
    Ok(Rat::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rat(&q(6, 4)), "3/2");
        assert_eq!(format_rat(&q(-4537, 6107270400)), "-4537/6107270400");
        assert_eq!(format_rat(&q(0, 5)), "0");
        assert_eq!(format_rat(&q(10, -5)), "-2");
    }

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rat("2/4").unwrap(), q(1, 2));
        assert_eq!(parse_rat(" -7 ").unwrap(), q(-7, 1));
        assert_eq!(parse_rat("0/9").unwrap(), q(0, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1.5").is_err());
    }
}
