//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QCalcError, QRat};

/// A polynomial in `q` over the integers, stored lowest degree first.
///
/// The coefficient vector is always normalized: the last entry is nonzero,
/// and the zero polynomial stores no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::from_coeffs(vec![c.into()])
    }

    /// `c · q^d`
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        QPoly { coeffs }
    }

    /// `q^d`
    pub fn q_pow(d: usize) -> Self {
        QPoly::monomial(1, d)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the minus-infinity degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Divides by `q^k`, failing if that leaves a negative power behind.
    pub fn unshift(&self, k: usize) -> Result<Self, QCalcError> {
        match self.valuation() {
            None => Ok(QPoly::zero()),
            Some(v) if v >= k => Ok(QPoly {
                coeffs: self.coeffs[k..].to_vec(),
            }),
            Some(_) => Err(QCalcError::NotDivisible),
        }
    }

    /// Multiplies by `q^k` for a possibly negative `k`.
    pub fn shift_signed(&self, k: i64) -> Result<Self, QCalcError> {
        if k >= 0 {
            Ok(self.shift(k as usize))
        } else {
            self.unshift(k.unsigned_abs() as usize)
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: returns `c` with `divisor · c == self`.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly, QCalcError> {
        let Some(dd) = divisor.degree() else {
            return Err(QCalcError::DivisionByZero);
        };
        let Some(nd) = self.degree() else {
            return Ok(QPoly::zero());
        };
        if nd < dd {
            return Err(QCalcError::NotDivisible);
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(QCalcError::NotDivisible);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(QCalcError::NotDivisible);
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, q0: &QRat) -> QRat {
        let mut acc = QRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q0) + &QRat::from_integer(c.clone());
        }
        acc
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `q^d · a(1/q)`: the coefficient list reversed inside a window of
    /// `d + 1` slots.
    pub fn reverse(&self, d: usize) -> Result<QPoly, QCalcError> {
        let Some(deg) = self.degree() else {
            return Ok(QPoly::zero());
        };
        if d < deg {
            return Err(QCalcError::DegreeTooHigh { degree: deg, window: d });
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Ok(QPoly::from_coeffs(coeffs))
    }

    pub fn is_palindromic(&self) -> bool {
        match (self.valuation(), self.degree()) {
            (Some(lo), Some(hi)) => (0..=(hi - lo)).all(|i| self.coeffs[lo + i] == self.coeffs[hi - i]),
            _ => true,
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{i}")?,
                _ => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &'a QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

#[derive(Serialize, Deserialize)]
struct QPolyWire {
    coeffs: Vec<String>,
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QPolyWire {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = QPolyWire::deserialize(d)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(serde::de::Error::custom("coefficient list is not normalized"));
        }
        Ok(QPoly { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) * &QPoly::zero(), QPoly::zero());
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), QPoly::zero());
        assert!((&p(&[1, 1]) - &p(&[1, 1])).coeffs().is_empty());
        assert_eq!(&p(&[0, 0, 3]) + &p(&[1, 0, -3]), p(&[1]));
    }

    #[test]
    fn degree_of_zero_is_sentinel() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert!(QPoly::zero().degree() < p(&[5]).degree());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[1, 2, 1]).div_exact(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), Err(QCalcError::NotDivisible));
        assert_eq!(p(&[1]).div_exact(&QPoly::zero()), Err(QCalcError::DivisionByZero));
        assert_eq!(QPoly::zero().div_exact(&p(&[1, 1])).unwrap(), QPoly::zero());
        assert_eq!(p(&[2]).div_exact(&p(&[3])), Err(QCalcError::NotDivisible));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 1, 1]).eval(&QRat::from(1)), QRat::from(3));
        assert_eq!(p(&[0, 0, 0, 1]).eval(&QRat::new(1, 2)), QRat::new(1, 8));
        assert_eq!(QPoly::zero().eval(&QRat::from(7)), QRat::from(0));
    }

    #[test]
    fn reverse_window() {
        assert_eq!(p(&[1, 2]).reverse(1).unwrap(), p(&[2, 1]));
        assert_eq!(p(&[1, 2]).reverse(3).unwrap(), p(&[0, 0, 2, 1]));
        let pal = p(&[1, 3, 3, 1]);
        assert_eq!(pal.reverse(3).unwrap(), pal);
        assert_eq!(
            p(&[1, 2, 3]).reverse(1),
            Err(QCalcError::DegreeTooHigh { degree: 2, window: 1 })
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 2, 1]).to_string(), "1 + 2q + q^2");
        assert_eq!(p(&[0, -1, 0, 3]).to_string(), "-q + 3q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_wire_format() {
        let json = serde_json::to_string(&p(&[1, 0, -2])).unwrap();
        assert_eq!(json, r#"{"coeffs":["1","0","-2"]}"#);
        let back: QPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(&[1, 0, -2]));
        assert!(serde_json::from_str::<QPoly>(r#"{"coeffs":["1","0"]}"#).is_err());
        assert_eq!(serde_json::to_string(&QPoly::zero()).unwrap(), r#"{"coeffs":[]}"#);
    }

    #[test]
    fn shifts() {
        assert_eq!(p(&[1, 1]).shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(p(&[0, 0, 1, 1]).unshift(2).unwrap(), p(&[1, 1]));
        assert!(p(&[0, 1]).unshift(2).is_err());
        assert_eq!(p(&[0, 1]).shift_signed(-1).unwrap(), p(&[1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }
}
