//! Elements of `Q(sigma)`, where `sigma` is the positive root of `x^2 - p x - q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::{rat, to_f64, Rational};
use super::SymError;

/// `a + b*sigma` with `sigma = (p + sqrt(p^2 + 4q)) / 2`.
///
/// When `p^2 + 4q` is a perfect square the metallic mean is itself rational
/// (for instance `sigma(1,2) = 2`). In that case the `b` part is folded into `a`
/// on construction so that componentwise equality remains a sound zero test.
///
/// Binary operators require both operands to share `(p, q)` and panic otherwise;
/// mixing parameter families is a programming error, not a data error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetallicScalar {
    a: Rational,
    b: Rational,
    p: u32,
    q: u32,
}

/// The generator `sigma` of `Q(sigma_{p,q})`.
pub fn sigma(p: i64, q: i64) -> Result<MetallicScalar, SymError> {
    if p < 1 || q < 1 || p > u32::MAX as i64 || q > u32::MAX as i64 {
        return Err(SymError::Parameter { p, q });
    }
    Ok(MetallicScalar::new(
        Rational::zero(),
        rat(1, 1),
        p as u32,
        q as u32,
    ))
}

fn rational_root(p: u32, q: u32) -> Option<Rational> {
    let disc = BigInt::from(p) * BigInt::from(p) + BigInt::from(4) * BigInt::from(q);
    let s = disc.sqrt();
    (&s * &s == disc).then(|| Rational::new(BigInt::from(p) + s, BigInt::from(2)))
}

impl MetallicScalar {
    pub fn new(a: Rational, b: Rational, p: u32, q: u32) -> Self {
        assert!(p >= 1 && q >= 1, "metallic parameters must be positive");
        match rational_root(p, q) {
            Some(root) if !b.is_zero() => Self {
                a: a + b * root,
                b: Rational::zero(),
                p,
                q,
            },
            _ => Self { a, b, p, q },
        }
    }

    pub fn rational(a: Rational, p: u32, q: u32) -> Self {
        Self::new(a, Rational::zero(), p, q)
    }

    pub fn zero(p: u32, q: u32) -> Self {
        Self::rational(Rational::zero(), p, q)
    }

    pub fn one(p: u32, q: u32) -> Self {
        Self::rational(rat(1, 1), p, q)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn params(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Conjugate `a + b (p - sigma)`, the image under the other root.
    pub fn conjugate(&self) -> Self {
        let p = rat(self.p as i64, 1);
        Self::new(&self.a + &self.b * p, -self.b.clone(), self.p, self.q)
    }

    /// `x * conj(x) = a^2 + a b p - b^2 q`.
    pub fn norm(&self) -> Rational {
        let p = rat(self.p as i64, 1);
        let q = rat(self.q as i64, 1);
        &self.a * &self.a + &self.a * &self.b * p - &self.b * &self.b * q
    }

    pub fn sigma_f64(&self) -> f64 {
        let (p, q) = (self.p as f64, self.q as f64);
        (p + (p * p + 4.0 * q).sqrt()) / 2.0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * self.sigma_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SymError> {
        self.check_params(rhs);
        let n = rhs.norm();
        if n.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let num = self * &rhs.conjugate();
        Ok(Self::new(num.a / &n, num.b / n, self.p, self.q))
    }

    pub fn recip(&self) -> Result<Self, SymError> {
        Self::one(self.p, self.q).checked_div(self)
    }

    pub fn powi(&self, n: i32) -> Result<Self, SymError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one(self.p, self.q);
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn check_params(&self, rhs: &Self) {
        assert!(
            self.p == rhs.p && self.q == rhs.q,
            "mixed metallic parameters ({},{}) vs ({},{})",
            self.p,
            self.q,
            rhs.p,
            rhs.q
        );
    }
}

impl fmt::Display for MetallicScalar {
    /// Renders as `a`, `b*sigma` or `a+b*sigma` with rational literals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sigma", self.b),
            (false, false) if self.b.is_negative() => {
                write!(f, "{}-{}*sigma", self.a, -self.b.clone())
            }
            (false, false) => write!(f, "{}+{}*sigma", self.a, self.b),
        }
    }
}

impl<'a> Add<&'a MetallicScalar> for &'a MetallicScalar {
    type Output = MetallicScalar;
    fn add(self, rhs: &MetallicScalar) -> MetallicScalar {
        self.check_params(rhs);
        MetallicScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, self.p, self.q)
    }
}

impl<'a> Sub<&'a MetallicScalar> for &'a MetallicScalar {
    type Output = MetallicScalar;
    fn sub(self, rhs: &MetallicScalar) -> MetallicScalar {
        self.check_params(rhs);
        MetallicScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, self.p, self.q)
    }
}

impl<'a> Mul<&'a MetallicScalar> for &'a MetallicScalar {
    type Output = MetallicScalar;
    /// `(a + b s)(c + d s) = ac + bd q + (ad + bc + bd p) s`, using `s^2 = p s + q`.
    fn mul(self, rhs: &MetallicScalar) -> MetallicScalar {
        self.check_params(rhs);
        let p = rat(self.p as i64, 1);
        let q = rat(self.q as i64, 1);
        let bd = &self.b * &rhs.b;
        MetallicScalar::new(
            &self.a * &rhs.a + &bd * q,
            &self.a * &rhs.b + &self.b * &rhs.a + bd * p,
            self.p,
            self.q,
        )
    }
}

impl Neg for &MetallicScalar {
    type Output = MetallicScalar;
    fn neg(self) -> MetallicScalar {
        MetallicScalar::new(-self.a.clone(), -self.b.clone(), self.p, self.q)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MetallicScalar> for MetallicScalar {
            type Output = MetallicScalar;
            fn $m(self, rhs: MetallicScalar) -> MetallicScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(a: i64, b: i64, p: u32, q: u32) -> MetallicScalar {
        MetallicScalar::new(rat(a, 1), rat(b, 1), p, q)
    }

    #[test]
    fn golden_square() {
        let s = sigma(1, 1).unwrap();
        assert_eq!(&s * &s, ms(1, 1, 1, 1));
    }

    #[test]
    fn silver_float_embedding() {
        let s = sigma(2, 1).unwrap();
        let oracle = (2.0 + 8f64.sqrt()) / 2.0;
        assert!((s.to_f64() - oracle).abs() < 1e-12);
        assert!((s.to_f64() - 2.414_213_56).abs() < 1e-8);
    }

    #[test]
    fn discriminant_square() {
        for p in 1..=5u32 {
            for q in 1..=5u32 {
                let s = sigma(p as i64, q as i64).unwrap();
                let two_s_minus_p = &(&s + &s) - &MetallicScalar::rational(rat(p as i64, 1), p, q);
                let sq = &two_s_minus_p * &two_s_minus_p;
                assert!(sq.is_rational());
                assert_eq!(sq.a(), &rat((p * p + 4 * q) as i64, 1));
            }
        }
    }

    #[test]
    fn one_plus_sigma_squared() {
        let x = ms(1, 1, 1, 1);
        assert_eq!(&x * &x, ms(2, 3, 1, 1));
    }

    #[test]
    fn sigma_times_sigma_minus_p_is_q() {
        for (p, q) in [(1, 1), (2, 1), (3, 5), (1, 2)] {
            let s = sigma(p, q).unwrap();
            let pm = MetallicScalar::rational(rat(p, 1), p as u32, q as u32);
            let prod = &s * &(&s - &pm);
            assert_eq!(prod, MetallicScalar::rational(rat(q, 1), p as u32, q as u32));
        }
    }

    #[test]
    fn rational_sigma_is_folded() {
        // 1 + 8 = 9, so sigma(1,2) = 2
        let s = sigma(1, 2).unwrap();
        assert!(s.is_rational());
        assert_eq!(s.a(), &rat(2, 1));
        let zero = &s - &MetallicScalar::rational(rat(2, 1), 1, 2);
        assert!(zero.is_zero());
    }

    #[test]
    fn division_and_errors() {
        let x = ms(3, -2, 3, 5);
        assert_eq!(x.checked_div(&x).unwrap(), MetallicScalar::one(3, 5));
        assert_eq!(
            x.checked_div(&MetallicScalar::zero(3, 5)),
            Err(SymError::DivisionByZero)
        );
        assert!(sigma(0, 1).is_err());
        assert!(sigma(1, -1).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed metallic parameters")]
    fn mixed_params_panic() {
        let _ = &sigma(1, 1).unwrap() + &sigma(2, 1).unwrap();
    }

    #[test]
    fn display_forms() {
        assert_eq!(ms(0, 1, 1, 1).to_string(), "1*sigma");
        assert_eq!(ms(2, -3, 1, 1).to_string(), "2-3*sigma");
        assert_eq!(
            MetallicScalar::new(rat(1, 2), rat(1, 3), 1, 1).to_string(),
            "1/2+1/3*sigma"
        );
        assert_eq!(ms(-4, 0, 1, 1).to_string(), "-4");
    }
}
