//! The definition-level oracle: `A_c(q) = [n]! · P_c(q)`, lifted from exact
//! point evaluations to a polynomial.

use super::{success_probability, EngineError};
use crate::config::Configuration;
use crate::qcalc::{binom2, interpolate, q_factorial, QPoly, QRat};

/// Evaluates `[n]! · P_c(q0)` at `q0 = 0, 1, …, n(n-1)/2` and interpolates.
///
/// The reversal symmetry bounds the degree by `n(n-1)/2`, so these points
/// determine the polynomial; a non-integral or negative coefficient means
/// the dynamics evaluation is wrong and is reported as an error.
pub fn remixed_exact(c: &Configuration) -> Result<QPoly, EngineError> {
    let n = c.n();
    let fact = q_factorial(n);
    let points = (0..=binom2(n) as i64)
        .map(|x| {
            let q0 = QRat::from(x);
            let p = success_probability(c, &q0)?;
            Ok((q0.clone(), &fact.eval(&q0) * &p))
        })
        .collect::<Result<Vec<_>, EngineError>>()?;
    let poly = interpolate(&points)?;
    if !poly.has_nonnegative_coeffs() {
        return Err(EngineError::NegativeCoefficient(poly.to_string()));
    }
    Ok(poly)
}

/// `A_c(q0)` at a single rational point.
pub fn remixed_value(c: &Configuration, q0: &QRat) -> Result<QRat, EngineError> {
    Ok(&q_factorial(c.n()).eval(q0) * &success_probability(c, q0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::q_factorial;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(remixed_exact(&cfg("1,1,1")).unwrap(), q_factorial(3));
        assert_eq!(
            remixed_exact(&cfg("3,0,0,2,0")).unwrap(),
            QPoly::from_i64s(&[1, 2, 3, 4, 3, 2, 1])
        );
        assert_eq!(
            remixed_exact(&cfg("0,1,2,2,0")).unwrap(),
            QPoly::from_i64s(&[0, 0, 1, 5, 12, 18, 18, 12, 5, 1])
        );
        assert_eq!(remixed_exact(&cfg("1")).unwrap(), QPoly::one());
        assert_eq!(remixed_exact(&cfg("2,0")).unwrap(), QPoly::one());
        assert_eq!(remixed_exact(&cfg("0,2")).unwrap(), QPoly::q_pow(1));
    }

    #[test]
    fn value_matches_polynomial() {
        let c = cfg("0,3,0,2,0");
        let poly = remixed_exact(&c).unwrap();
        for q0 in [QRat::new(1, 3), QRat::new(5, 2)] {
            assert_eq!(remixed_value(&c, &q0).unwrap(), poly.eval(&q0));
        }
    }
}
