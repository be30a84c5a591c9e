//! Exact rational arithmetic, the fractional part, and the sawtooth bracket.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number with exact arithmetic throughout.
///
/// Values are always stored in lowest terms with a positive denominator.
/// The display and serde form is `"p/q"`, or just `"p"` when the
/// denominator is 1, with the sign on the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, rejecting a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num.into(), den.into())))
    }

    /// Builds `num/den` from big integers, rejecting a zero denominator.
    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num, den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn from_u64(n: u64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part `self - floor(self)`, always in `[0, 1)`.
    pub fn frac(&self) -> Rational {
        Self(&self.0 - self.0.floor())
    }

    pub fn abs(&self) -> Rational {
        Self(self.0.abs())
    }

    /// Exact integer value if the denominator is 1 and it fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        self.0.to_integer().to_i64()
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Self(num_traits::pow::Pow::pow(&self.0, exp as i32))
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Fractional part `{x} = x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x.frac()
}

/// Sawtooth bracket `((x))`: zero on integers, `{x} - 1/2` otherwise.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x.frac() - Rational::new(1, 2).expect("nonzero denominator")
    }
}

/// Greatest common divisor of two nonnegative integers, positive result.
/// `gcd(a, 0) = a`; `gcd(0, 0)` is rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroGcd);
    }
    Ok(num_integer::gcd(a, b))
}

/// Binomial coefficient `C(n, k)` computed exactly.
pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for s in 0..k {
        acc = acc * BigInt::from(n - s) / BigInt::from(s + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i64, den: i64) -> Rational {
        Rational::new(num, den).unwrap()
    }

    #[test]
    fn construction_normalizes_sign_and_terms() {
        assert_eq!(r(3, -6), r(-1, 2));
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(r(4, 2).to_string(), "2");
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn frac_examples() {
        assert_eq!(frac(&r(7, 3)), r(1, 3));
        assert_eq!(frac(&r(-1, 6)), r(5, 6));
        assert_eq!(frac(&r(-7, 3)), r(2, 3));
        assert_eq!(frac(&r(4, 1)), Rational::zero());
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&r(1, 2)), Rational::zero());
        assert_eq!(sawtooth(&r(7, 3)), r(-1, 6));
        assert_eq!(sawtooth(&r(1, 3)), r(-1, 6));
        assert_eq!(sawtooth(&r(-1, 6)), r(1, 3));
        assert_eq!(sawtooth(&r(5, 1)), Rational::zero());
        assert_eq!(sawtooth(&r(0, 1)), Rational::zero());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(12, 18), Ok(6));
        assert_eq!(gcd(7, 0), Ok(7));
        assert_eq!(gcd(0, 7), Ok(7));
        assert_eq!(gcd(0, 0), Err(Error::ZeroGcd));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "5", "-5", "1/3", "-7/12", "22/7"] {
            let v: Rational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert_eq!("1/-2".parse::<Rational>().unwrap().to_string(), "-1/2");
        assert_eq!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator));
        assert!(matches!(
            "a/b".parse::<Rational>(),
            Err(Error::InvalidRational(_))
        ));
        assert!(matches!(
            "".parse::<Rational>(),
            Err(Error::InvalidRational(_))
        ));
    }

    #[test]
    fn serde_uses_string_form() {
        let v = r(-1, 6);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-1/6\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(10, 10), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(20, 7), BigInt::from(77520));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = Rational> {
            (any::<i32>(), 1..10_000i32)
                .prop_map(|(n, d)| Rational::new(n as i64, d as i64).unwrap())
        }

        proptest! {
            #[test]
            fn frac_is_in_unit_interval(x in arb_rational()) {
                let f = frac(&x);
                prop_assert!(!f.is_negative());
                prop_assert!(f < Rational::one());
            }

            #[test]
            fn sawtooth_is_odd(x in arb_rational()) {
                prop_assert_eq!(sawtooth(&-&x), -sawtooth(&x));
            }

            #[test]
            fn sawtooth_has_period_one(x in arb_rational(), k in -50i64..50) {
                let shifted = &x + &Rational::from_integer(k);
                prop_assert_eq!(sawtooth(&shifted), sawtooth(&x));
            }

            #[test]
            fn display_round_trips(x in arb_rational()) {
                let back: Rational = x.to_string().parse().unwrap();
                prop_assert_eq!(back, x);
            }
        }
    }
}
