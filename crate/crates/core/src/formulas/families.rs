//! Closed forms for the Lukasiewicz, almost Lukasiewicz, connected and
//! weakly Lukasiewicz families.

use super::FormulaError;
use crate::config::{ball_order, max_weakly_shift, validate_core, ConfigError, Configuration};
use crate::qcalc::{binom2, q_binomial, q_int, q_pochhammer, shifted_bracket_product, QPoly, TSeries};

/// `A_c = ∏_{a ∈ MSet(c)} [a]` for Lukasiewicz `c`.
pub fn a_lukasiewicz(c: &Configuration) -> Result<QPoly, FormulaError> {
    if !c.classify().is_lukasiewicz {
        return Err(FormulaError::WrongFamily("Lukasiewicz"));
    }
    Ok(shifted_bracket_product(0, &c.left_to_right_order()))
}

/// Coefficient of `t^i` in `(t;q)_{n+1} Σ_j t^j ∏_{a ∈ mset} [j + a]`:
///
/// `Σ_{j=0}^{i} (-1)^(i+j) q^binom(i-j,2) [n+1 choose i-j] ∏ [j + a]`.
pub fn alternating_sum(mset: &[usize], i: usize, n: usize) -> QPoly {
    let mut total = QPoly::zero();
    for j in 0..=i {
        let term = &q_binomial(n + 1, (i - j) as i64).shift(binom2(i - j)) * &shifted_bracket_product(j, mset);
        if (i + j).is_multiple_of(2) {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// `(t;q)_{n+1} Σ_j t^j ∏_{a ∈ MSet(gamma)} [j + a]` modulo `t^trunc`, for
/// any core (the generating side of the connected identity).
pub fn generating_series(gamma: &[usize], n: usize, trunc: usize) -> TSeries {
    let mset = ball_order(gamma);
    let rhs = TSeries::from_fn(trunc, |j| shifted_bracket_product(j, &mset));
    q_pochhammer(n + 1, trunc).mul(&rhs)
}

fn check_hole_free(gamma: &[usize], n: usize) -> Result<(), FormulaError> {
    if gamma.is_empty() || gamma.contains(&0) {
        return Err(FormulaError::WrongFamily("connected"));
    }
    check_ball_count(gamma, n)
}

fn check_ball_count(gamma: &[usize], n: usize) -> Result<(), FormulaError> {
    let balls: usize = gamma.iter().sum();
    if balls != n {
        return Err(FormulaError::BallCount { balls, n });
    }
    Ok(())
}

fn check_shift(gamma: &[usize], i: usize, n: usize) -> Result<(), FormulaError> {
    if i + gamma.len() > n {
        return Err(FormulaError::ShiftOutOfRange { shift: i, max: n.saturating_sub(gamma.len()) });
    }
    Ok(())
}

fn nonnegative(p: QPoly) -> QPoly {
    assert!(p.has_nonnegative_coeffs(), "closed form left negative coefficients: {p}");
    p
}

/// `A_(0^i, gamma, 0^(n-m-i))` for a hole-free core.
pub fn a_connected(gamma: &[usize], i: usize, n: usize) -> Result<QPoly, FormulaError> {
    check_hole_free(gamma, n)?;
    check_shift(gamma, i, n)?;
    Ok(nonnegative(alternating_sum(&ball_order(gamma), i, n)))
}

/// The connected generating identity multiplied out: its `t^i` coefficient
/// is `A` at shift `i` for `i <= n - m`.
pub fn connected_series(gamma: &[usize], n: usize, trunc: usize) -> Result<TSeries, FormulaError> {
    check_hole_free(gamma, n)?;
    Ok(generating_series(gamma, n, trunc))
}

/// `∏ [a] - [n+1 choose j] ∏_{a<j} [a] ∏_{b>j} [b-j]` with `j` the defect.
pub fn a_almost_lukasiewicz(c: &Configuration) -> Result<QPoly, FormulaError> {
    let j = c
        .classify()
        .almost_defect
        .ok_or(FormulaError::WrongFamily("almost Lukasiewicz"))?;
    let mset = c.left_to_right_order();
    let full = shifted_bracket_product(0, &mset);
    let below: QPoly = mset.iter().filter(|&&a| a < j).map(|&a| q_int(a)).product();
    let above: QPoly = mset.iter().filter(|&&b| b > j).map(|&b| q_int(b - j)).product();
    let correction = &(&q_binomial(c.n() + 1, j as i64) * &below) * &above;
    Ok(nonnegative(&full - &correction))
}

/// The connected alternating sum, valid for any core at shifts up to its
/// largest weakly Lukasiewicz shift.
pub fn a_weakly_lukasiewicz(gamma: &[usize], i: usize, n: usize) -> Result<QPoly, FormulaError> {
    validate_core(gamma).map_err(|_| FormulaError::WrongFamily("weakly Lukasiewicz"))?;
    check_ball_count(gamma, n)?;
    check_shift(gamma, i, n)?;
    let bound = match max_weakly_shift(gamma, n) {
        Ok(k) => k,
        Err(ConfigError::NoWeaklyShift) => return Err(FormulaError::WrongFamily("weakly Lukasiewicz")),
        Err(e) => return Err(e.into()),
    };
    if i > bound {
        return Err(FormulaError::ShiftBeyondWeaklyBound { shift: i, bound });
    }
    Ok(nonnegative(alternating_sum(&ball_order(gamma), i, n)))
}
