//! Exact rationals used as evaluation points and probabilities.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::QCalcError;

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRat(BigRational);

impl QRat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        QRat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: BigInt) -> Self {
        QRat(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        QRat(BigRational::zero())
    }

    pub fn one() -> Self {
        QRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Self {
        QRat(self.0.recip())
    }

    /// Lossy conversion for reporting only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_integer(BigInt::from(n))
    }
}

impl From<BigRational> for QRat {
    fn from(r: BigRational) -> Self {
        QRat(r)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

/// Accepts `a/b` or a bare integer. Decimal literals are rejected.
impl FromStr for QRat {
    type Err = QCalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QCalcError::BadRational(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let valid = |t: &str| {
            let digits = t.strip_prefix('-').unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num) || !valid(den) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(QRat(BigRational::new(num, den)))
    }
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<'a> $tr<&'a QRat> for &'a QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                QRat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                QRat(self.0.$m(rhs.0))
            }
        }
    )*};
}

rat_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QRat {
    type Output = QRat;

    fn neg(self) -> QRat {
        QRat(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("1/3".parse::<QRat>().unwrap(), QRat::new(1, 3));
        assert_eq!("2/4".parse::<QRat>().unwrap(), QRat::new(1, 2));
        assert_eq!("7".parse::<QRat>().unwrap(), QRat::from(7));
        assert_eq!("3/-6".parse::<QRat>().unwrap(), QRat::new(-1, 2));
        assert!("0.5".parse::<QRat>().is_err());
        assert!("1/0".parse::<QRat>().is_err());
        assert!("".parse::<QRat>().is_err());
        assert!("1e3".parse::<QRat>().is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = QRat::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(serde_json::to_string(&QRat::from(2)).unwrap(), r#""2/1""#);
    }
}
