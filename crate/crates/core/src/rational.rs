//! Exact rational scalars and the string grammar used at the I/O boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Parses `-? [0-9]+ ( "/" [1-9][0-9]* )?`. Anything else, including
/// whitespace, a leading `+` or a zero denominator, is rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) || !d.starts_with(|c: char| ('1'..='9').contains(&c))
            {
                return None;
            }
            d.parse().ok()?
        }
    };
    Some(Rational::new(num, den))
}

/// Canonical string form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_accepts_canonical_forms() {
        assert_eq!(parse_rational("4"), Some(int(4)));
        assert_eq!(parse_rational("-1"), Some(int(-1)));
        assert_eq!(parse_rational("3/7"), Some(ratio(3, 7)));
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("007"), Some(int(7)));
    }

    #[test]
    fn grammar_rejects_everything_else() {
        for bad in ["", "-", "1/0", "1/07", "+1", " 1", "1.5", "1/-2", "1/", "/2", "a", "1e3", "--1"] {
            assert_eq!(parse_rational(bad), None, "{bad:?} should be rejected");
        }
    }

    #[test]
    fn formatting_is_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&ratio(10, 5)), "2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(floor(&ratio(28, 3)), BigInt::from(9));
        assert_eq!(floor(&ratio(-1, 2)), BigInt::from(-1));
        assert_eq!(floor(&int(5)), BigInt::from(5));
    }
}
