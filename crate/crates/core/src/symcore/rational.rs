use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SymError;

/// Arbitrary-precision rational, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`.
pub fn parse_rational(text: &str) -> Result<Rational, SymError> {
    let text = text.trim();
    let bad = |offset: usize| SymError::Syntax {
        offset,
        message: format!("`{text}` is not a rational literal"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad(0))?;
    let d: BigInt = den.parse().map_err(|_| bad(num.len() + 1))?;
    if d.is_zero() {
        return Err(SymError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn is_one(r: &Rational) -> bool {
    r.is_one()
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_normalize() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn denominator_stays_positive() {
        let r = rat(3, -9);
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(r, rat(-1, 3));
    }
}
