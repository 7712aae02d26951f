//! Polynomial reconstruction from exact point values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{QCalcError, QPoly, QRat};

/// Returns the unique polynomial of degree `< points.len()` through the
/// given points, provided all of its coefficients are integers.
///
/// Uses Newton divided differences, then expands the Newton form into the
/// monomial basis.
pub fn interpolate(points: &[(QRat, QRat)]) -> Result<QPoly, QCalcError> {
    if points.is_empty() {
        return Err(QCalcError::NoPoints);
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(QCalcError::RepeatedAbscissa(x.to_string()));
        }
    }
    let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x.as_big_rational()).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.as_big_rational().clone()).collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[0] + (q - x0)(dd[1] + (q - x1)(…)).
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * xs[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(acc.len());
    for (k, c) in acc.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(QCalcError::NonIntegerCoefficients { index: k, value: c.to_string() });
        }
        coeffs.push(c.to_integer());
    }
    Ok(QPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64, i64)]) -> Vec<(QRat, QRat)> {
        v.iter().map(|&(x, a, b)| (QRat::from(x), QRat::new(a, b))).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(interpolate(&pts(&[(0, 1, 1), (1, 2, 1)])).unwrap(), QPoly::from_i64s(&[1, 1]));
        assert_eq!(
            interpolate(&pts(&[(0, 1, 1), (1, 3, 1), (2, 7, 1)])).unwrap(),
            QPoly::from_i64s(&[1, 1, 1])
        );
        assert!(matches!(
            interpolate(&pts(&[(0, 1, 1), (1, 3, 2)])),
            Err(QCalcError::NonIntegerCoefficients { .. })
        ));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(interpolate(&[]), Err(QCalcError::NoPoints));
        assert!(matches!(
            interpolate(&pts(&[(1, 1, 1), (1, 2, 1)])),
            Err(QCalcError::RepeatedAbscissa(_))
        ));
    }

    #[test]
    fn constant_and_rational_nodes() {
        assert_eq!(interpolate(&pts(&[(5, 3, 1)])).unwrap(), QPoly::constant(3));
        let p = QPoly::from_i64s(&[2, 0, -1]);
        let nodes = [QRat::new(1, 2), QRat::new(-3, 1), QRat::new(7, 5)];
        let points: Vec<_> = nodes.iter().map(|x| (x.clone(), p.eval(x))).collect();
        assert_eq!(interpolate(&points).unwrap(), p);
    }
}
