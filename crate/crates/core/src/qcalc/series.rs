//! Power series in `t` with polynomial-in-`q` coefficients, known modulo
//! `t^trunc`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QCalcError, QPoly};

/// A series `Σ_j c_j(q) t^j` known modulo `t^trunc`.
///
/// `tcoeffs.len() == trunc` always holds; trailing zero coefficients are
/// kept, since they carry information about the truncation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TSeries {
    tcoeffs: Vec<QPoly>,
}

impl TSeries {
    pub fn zero(trunc: usize) -> Self {
        TSeries {
            tcoeffs: vec![QPoly::zero(); trunc],
        }
    }

    /// Builds a series from `coeffs`, padding with zeros or cutting so that
    /// exactly `trunc` coefficients are kept.
    pub fn from_coeffs(mut coeffs: Vec<QPoly>, trunc: usize) -> Self {
        coeffs.resize(trunc, QPoly::zero());
        TSeries { tcoeffs: coeffs }
    }

    /// Builds a series from a closure giving the coefficient of `t^j`.
    pub fn from_fn(trunc: usize, f: impl FnMut(usize) -> QPoly) -> Self {
        TSeries {
            tcoeffs: (0..trunc).map(f).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.tcoeffs.len()
    }

    pub fn tcoeffs(&self) -> &[QPoly] {
        &self.tcoeffs
    }

    pub fn into_tcoeffs(self) -> Vec<QPoly> {
        self.tcoeffs
    }

    /// Coefficient of `t^j`, or `None` past the truncation.
    pub fn coeff(&self, j: usize) -> Option<&QPoly> {
        self.tcoeffs.get(j)
    }

    /// Same series known to fewer terms.
    pub fn truncate(&self, trunc: usize) -> Self {
        TSeries {
            tcoeffs: self.tcoeffs.iter().take(trunc).cloned().collect(),
        }
    }

    /// Multiplies by `t^k`; the truncation order is unchanged.
    pub fn shift_t(&self, k: usize) -> Self {
        TSeries::from_fn(self.trunc(), |j| {
            if j >= k {
                self.tcoeffs[j - k].clone()
            } else {
                QPoly::zero()
            }
        })
    }

    /// Multiplies every coefficient by a polynomial in `q`.
    pub fn scale(&self, p: &QPoly) -> Self {
        TSeries {
            tcoeffs: self.tcoeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Substitutes `t -> t q^k`.
    pub fn dilate(&self, k: usize) -> Self {
        TSeries {
            tcoeffs: self.tcoeffs.iter().enumerate().map(|(j, c)| c.shift(j * k)).collect(),
        }
    }

    /// Product truncated to the shorter of the two truncations.
    pub fn mul(&self, other: &TSeries) -> TSeries {
        let trunc = self.trunc().min(other.trunc());
        TSeries::from_fn(trunc, |j| {
            (0..=j)
                .map(|i| &self.tcoeffs[i] * &other.tcoeffs[j - i])
                .sum()
        })
    }

    /// Compares the coefficients of `t^0 .. t^(k-1)`.
    pub fn equal_mod(&self, other: &TSeries, k: usize) -> Result<bool, QCalcError> {
        let have = self.trunc().min(other.trunc());
        if k > have {
            return Err(QCalcError::TruncationTooShort { requested: k, available: have });
        }
        Ok(self.tcoeffs[..k] == other.tcoeffs[..k])
    }

    /// Index of the lowest nonzero coefficient within the truncation.
    pub fn t_valuation(&self) -> Option<usize> {
        self.tcoeffs.iter().position(|c| !c.is_zero())
    }

    fn zip_with(&self, other: &TSeries, f: impl Fn(&QPoly, &QPoly) -> QPoly) -> TSeries {
        let trunc = self.trunc().min(other.trunc());
        TSeries::from_fn(trunc, |j| f(&self.tcoeffs[j], &other.tcoeffs[j]))
    }
}

impl Add for &TSeries {
    type Output = TSeries;

    fn add(self, rhs: &TSeries) -> TSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TSeries {
    type Output = TSeries;

    fn sub(self, rhs: &TSeries) -> TSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;

    fn mul(self, rhs: &TSeries) -> TSeries {
        TSeries::mul(self, rhs)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;

    fn neg(self) -> TSeries {
        TSeries {
            tcoeffs: self.tcoeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TSeriesWire {
    trunc: usize,
    tcoeffs: Vec<QPoly>,
}

impl Serialize for TSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TSeriesWire {
            trunc: self.trunc(),
            tcoeffs: self.tcoeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = TSeriesWire::deserialize(d)?;
        if wire.tcoeffs.len() != wire.trunc {
            return Err(serde::de::Error::custom("tcoeffs length differs from trunc"));
        }
        Ok(TSeries { tcoeffs: wire.tcoeffs })
    }
}
