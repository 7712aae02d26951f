//! One-hole cores `(alpha, 0, beta)` and their corrective series.
//!
//! With `ℓ`, `p` the sites and balls of `alpha` and `r` the balls of
//! `beta`, the corrective series is
//!
//! ```text
//! P = t^(p-ℓ) · K · Σ_{i=0}^{r} (-1)^i t^i q^(binom(p,2) + p i + binom(i+1,2)) [n+1 choose r-i]
//! K = ∏_{a ∈ MSet(alpha)} [ℓ+1-a] q^(a-ℓ) · ∏_{b ∈ MSet(beta)} [b]
//! ```
//!
//! and `Σ_i t^i A_(shift i) = (t;q)_{n+1} Σ_j t^j ∏ [j+a] - P`. The factor
//! `q^(a-ℓ)` has a non-positive exponent; it is carried as an integer
//! offset and only applied once the whole monomial is assembled.
//!
//! Extracting `t^i` gives the `q`-exponent
//! `binom(p,2) + p i' + binom(i'+1,2)` with `i' = i - (p - ℓ)`, which is
//! what [`a_one_hole`] uses.

use super::families::alternating_sum;
use super::FormulaError;
use crate::config::{ball_order, one_hole_decompose, Configuration, OneHoleShape};
use crate::qcalc::{binom2, q_binomial, q_int, shifted_bracket_product, QPoly, TSeries};

/// `K` as a polynomial part and a (non-positive) power of `q`.
fn prefactor(shape: &OneHoleShape) -> (QPoly, i64) {
    let ell = shape.ell();
    let alpha = ball_order(&shape.alpha);
    let poly = &alpha.iter().map(|&a| q_int(ell + 1 - a)).product::<QPoly>()
        * &shifted_bracket_product(0, &ball_order(&shape.beta));
    let offset = alpha.iter().map(|&a| a as i64 - ell as i64).sum();
    (poly, offset)
}

/// Coefficient of `t^i` in the corrective series; `None` outside
/// `p - ℓ <= i <= p - ℓ + r`.
pub fn corrective_coefficient(shape: &OneHoleShape, i: usize) -> Result<Option<QPoly>, FormulaError> {
    let (p, ell, r) = (shape.p(), shape.ell(), shape.r());
    let Some(k) = i.checked_sub(p - ell).filter(|&k| k <= r) else {
        return Ok(None);
    };
    let (poly, offset) = prefactor(shape);
    let exponent = (binom2(p) + p * k + binom2(k + 1)) as i64 + offset;
    let term = (&poly * &q_binomial(shape.n() + 1, (r - k) as i64))
        .shift_signed(exponent)
        .map_err(|_| FormulaError::Integrality)?;
    Ok(Some(if k % 2 == 0 { term } else { -term }))
}

/// `P_(alpha,0,beta)` in full; it has `t`-degree `n - ℓ`.
pub fn corrective_series(alpha: &[usize], beta: &[usize]) -> Result<TSeries, FormulaError> {
    let shape = OneHoleShape::new(alpha.to_vec(), beta.to_vec())
        .map_err(|_| FormulaError::WrongFamily("one-hole"))?;
    let trunc = shape.n() - shape.ell() + 1;
    let coeffs = (0..trunc)
        .map(|i| Ok(corrective_coefficient(&shape, i)?.unwrap_or_else(QPoly::zero)))
        .collect::<Result<Vec<_>, FormulaError>>()?;
    Ok(TSeries::from_coeffs(coeffs, trunc))
}

/// `A_c` for a one-hole configuration.
pub fn a_one_hole(c: &Configuration) -> Result<QPoly, FormulaError> {
    let shape = one_hole_decompose(c).map_err(|_| FormulaError::WrongFamily("one-hole"))?;
    let core = c.core();
    let i = core.leading;
    let mut value = alternating_sum(&ball_order(&core.gamma), i, c.n());
    if i >= shape.p() - shape.ell() {
        if let Some(corr) = corrective_coefficient(&shape, i)? {
            value -= &corr;
        }
    }
    assert!(value.has_nonnegative_coeffs(), "one-hole closed form went negative for {c}");
    Ok(value)
}
