//! Exact rational scalars.
//!
//! Every coordinate, coefficient, and series value in this crate is a
//! `Rat`: an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. No floating point appears anywhere; equality of
//! computed values is always exact equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// The rational n/d. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// The rational n/1.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Parse "p/q" or "p" with optional sign, rejecting empty or zero denominators.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num.parse().ok()?;
    let d: Int = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Format in lowest terms, omitting the denominator when it is 1.
pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rat_int(2)
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3", "22/7"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(format_rat(&x), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn midpoint_is_strictly_between() {
        let m = midpoint(&rat(1, 3), &rat(1, 2));
        assert!(rat(1, 3) < m && m < rat(1, 2));
    }
}
