//! Carlitz–Scoville generalised Eulerian numbers and their q-analogs.
//!
//! `A(r,s|x,y)_q` is `A_c / [x+y-1]!` for the connected configuration
//! `c = (0^r, 1^(y-1), r+s+1, 1^(x-1), 0^s)`, and has the closed form
//!
//! ```text
//! Σ_{j=0}^{r} (-1)^(r+j) q^binom(r-j,2) [j+x+y-1 choose j] [r+s+x+y choose r-j] [j+y]^(r+s)
//! ```
//!
//! It satisfies `A(r,s) = q^(r+y-1) [s+x] A(r-1,s) + [r+y] A(r,s-1)`.

use super::families::a_connected;
use super::FormulaError;
use crate::config::Configuration;
use crate::qcalc::{binom2, q_binomial, q_factorial, q_int, q_pochhammer, QPoly, TSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CSParams {
    pub r: usize,
    pub s: usize,
    pub x: usize,
    pub y: usize,
}

impl CSParams {
    pub fn new(r: usize, s: usize, x: usize, y: usize) -> Result<Self, FormulaError> {
        if x == 0 || y == 0 {
            return Err(FormulaError::BadCarlitzScoville { x, y });
        }
        Ok(CSParams { r, s, x, y })
    }

    /// Number of balls of the underlying configuration.
    pub fn n(&self) -> usize {
        self.r + self.s + self.x + self.y - 1
    }

    /// `(1^(y-1), r+s+1, 1^(x-1))`.
    pub fn core(&self) -> Vec<usize> {
        let mut gamma = vec![1; self.y - 1];
        gamma.push(self.r + self.s + 1);
        gamma.extend(std::iter::repeat_n(1, self.x - 1));
        gamma
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::from_core(self.r, &self.core(), self.n()).expect("core fits by construction")
    }
}

pub fn carlitz_scoville_q(p: &CSParams) -> QPoly {
    let CSParams { r, s, x, y } = *p;
    let mut total = QPoly::zero();
    for j in 0..=r {
        let term = &(&q_binomial(j + x + y - 1, j as i64) * &q_binomial(r + s + x + y, (r - j) as i64))
            * &q_int(j + y).pow((r + s) as u32);
        let term = term.shift(binom2(r - j));
        if (r + j) % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// The definition: the connected closed form divided by `[x+y-1]!`.
pub fn carlitz_scoville_by_definition(p: &CSParams) -> Result<QPoly, FormulaError> {
    let a = a_connected(&p.core(), p.r, p.n())?;
    a.div_exact(&q_factorial(p.x + p.y - 1)).map_err(|_| FormulaError::Integrality)
}

/// `Σ_{r=0}^{d} t^r A(r, d-r | x, y)_q` as the truncation mod `t^(d+1)` of
/// `(t;q)_{d+x+y} Σ_j t^j [j+x+y-1 choose j] [j+y]^d`.
pub fn carlitz_scoville_series(d: usize, x: usize, y: usize) -> TSeries {
    let rhs = TSeries::from_fn(d + 1, |j| {
        &q_binomial(j + x + y - 1, j as i64) * &q_int(j + y).pow(d as u32)
    });
    q_pochhammer(d + x + y, d + 1).mul(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cs(r: usize, s: usize, x: usize, y: usize) -> QPoly {
        carlitz_scoville_q(&CSParams::new(r, s, x, y).unwrap())
    }

    /// Right-hand side of the q-recurrence with exponent `r + y - offset`.
    fn recurrence_rhs(r: usize, s: usize, x: usize, y: usize, offset: usize) -> QPoly {
        let mut rhs = QPoly::zero();
        if r > 0 {
            rhs += &(&q_int(s + x) * &cs(r - 1, s, x, y)).shift(r + y - offset);
        }
        if s > 0 {
            rhs += &(&q_int(r + y) * &cs(r, s - 1, x, y));
        }
        rhs
    }

    #[test]
    fn trivial_value() {
        for x in 1..=3 {
            for y in 1..=3 {
                assert_eq!(cs(0, 0, x, y), QPoly::one());
            }
        }
    }

    #[test]
    fn classical_eulerian_numbers() {
        // A(r, s | 1, 1) at q = 1 counts permutations of r+s+1 with r descents.
        let eulerian = [[1, 1, 0], [1, 4, 1]];
        for (d, row) in eulerian.iter().enumerate() {
            for (r, &want) in row.iter().enumerate().take(d + 2) {
                let s = d + 1 - r;
                assert_eq!(cs(r, s, 1, 1).eval_one(), BigInt::from(want), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn matches_definition() {
        for r in 0..=3 {
            for s in 0..=3 - r {
                for x in 1..=3 {
                    for y in 1..=3 {
                        let p = CSParams::new(r, s, x, y).unwrap();
                        assert_eq!(carlitz_scoville_by_definition(&p).unwrap(), carlitz_scoville_q(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn q_recurrence() {
        for d in 1..=5 {
            for r in 0..=d {
                let s = d - r;
                for (x, y) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
                    assert_eq!(cs(r, s, x, y), recurrence_rhs(r, s, x, y, 1), "r={r} s={s} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn exponent_r_plus_y_fails() {
        assert_ne!(cs(1, 1, 1, 1), recurrence_rhs(1, 1, 1, 1, 0));
    }

    #[test]
    fn generating_series_form() {
        for d in 0..=4 {
            for (x, y) in [(1, 1), (2, 3)] {
                let series = carlitz_scoville_series(d, x, y);
                for r in 0..=d {
                    assert_eq!(series.coeff(r).unwrap(), &cs(r, d - r, x, y));
                }
            }
        }
    }

    #[test]
    fn configuration_shape() {
        let p = CSParams::new(1, 2, 2, 3).unwrap();
        assert_eq!(p.configuration().sites(), &[0, 1, 1, 4, 1, 0, 0]);
        assert!(CSParams::new(0, 0, 0, 1).is_err());
    }
}
