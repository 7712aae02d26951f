//! Memoized final-step induction.
//!
//! Let `u_n` be the rightmost ball and `d = c - {u_n}`. The last ball ends
//! on site `k` exactly when `d_k = 0` and `d` has `k - 1` balls on
//! `[1;k-1]`, i.e. `H_{d,k-1} = 0` and `H_{d,k} = -1`. The two sides then
//! evolve independently, giving
//!
//! ```text
//! A_c = Σ_k wt(k, u_n) · A_(d_1..d_{k-1}) · A_(d_{k+1}..d_n)
//! wt(k, u) = [n choose k] [u]                        if k >= u
//!          = q^(u-k) [n choose k-1] [n+1-u]          if k <  u
//! ```
//!
//! The factors are windows of `d`, not of `c`; the two differ on the side
//! containing `u_n`.

use std::collections::HashMap;

use crate::config::{heights, Configuration};
use crate::qcalc::{q_binomial, q_int, QPoly};

/// One summand of the final induction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitTerm {
    /// Landing site of the last ball (1-based).
    pub k: usize,
    pub weight: QPoly,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// `wt(k, u_n)` for a configuration of `n` balls.
pub fn split_weight(n: usize, k: usize, last: usize) -> QPoly {
    if k >= last {
        &q_binomial(n, k as i64) * &q_int(last)
    } else {
        &q_binomial(n, k as i64 - 1).shift(last - k) * &q_int(n + 1 - last)
    }
}

/// The split points and weights for `sites` (which must hold as many balls
/// as sites, at least one).
pub fn split_terms(sites: &[usize]) -> Vec<SplitTerm> {
    let n = sites.len();
    let last = sites.iter().rposition(|&x| x > 0).expect("at least one ball") + 1;
    let mut d = sites.to_vec();
    d[last - 1] -= 1;
    let h = heights(&d);
    (1..=n)
        .filter(|&k| d[k - 1] == 0 && (k == 1 || h[k - 2] == 0))
        .map(|k| SplitTerm {
            k,
            weight: split_weight(n, k, last),
            left: d[..k - 1].to_vec(),
            right: d[k..].to_vec(),
        })
        .collect()
}

/// Final-induction evaluator with a memo keyed by sub-configuration.
///
/// The cache can be reused across configurations; it only ever grows.
#[derive(Default)]
pub struct FinalInduction {
    memo: HashMap<Vec<usize>, QPoly>,
}

impl FinalInduction {
    pub fn new() -> Self {
        FinalInduction::default()
    }

    pub fn eval(&mut self, c: &Configuration) -> QPoly {
        self.eval_sites(c.sites())
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    fn eval_sites(&mut self, sites: &[usize]) -> QPoly {
        match sites {
            [] => return QPoly::one(),
            [x] => return if *x == 1 { QPoly::one() } else { QPoly::zero() },
            _ => {}
        }
        if let Some(p) = self.memo.get(sites) {
            return p.clone();
        }
        let mut total = QPoly::zero();
        for term in split_terms(sites) {
            let left = self.eval_sites(&term.left);
            if left.is_zero() {
                continue;
            }
            let right = self.eval_sites(&term.right);
            total += &(&(&term.weight * &left) * &right);
        }
        self.memo.insert(sites.to_vec(), total.clone());
        total
    }
}

pub fn remixed_induction(c: &Configuration) -> QPoly {
    FinalInduction::new().eval(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::configurations;
    use crate::engine::remixed_exact;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(remixed_induction(&cfg("1")), QPoly::one());
        assert_eq!(remixed_induction(&cfg("2,0")), QPoly::one());
        assert_eq!(
            remixed_induction(&cfg("1,0,3,0,1")),
            QPoly::from_i64s(&[0, 2, 6, 12, 16, 18, 16, 12, 6, 2])
        );
        assert_eq!(
            remixed_induction(&cfg("0,2,1,0,3,0")),
            QPoly::from_i64s(&[0, 0, 2, 8, 19, 36, 56, 72, 78, 72, 56, 36, 19, 8, 2])
        );
    }

    #[test]
    fn lukasiewicz_has_single_split() {
        let terms = split_terms(cfg("3,0,0,2,0").sites());
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].k, 5);
        assert_eq!(terms[0].left, vec![3, 0, 0, 1]);
        assert!(terms[0].right.is_empty());
    }

    /// The split factors written as windows of `c` itself, with the
    /// condition `H_{c - {u_n}, k} = 0`. This reading loses every term on
    /// Lukasiewicz configurations, which is why the evaluator uses windows
    /// of `c - {u_n}` instead.
    fn windows_of_c(sites: &[usize]) -> QPoly {
        let n = sites.len();
        if n <= 1 {
            return if n == 0 || sites[0] == 1 { QPoly::one() } else { QPoly::zero() };
        }
        let last = sites.iter().rposition(|&x| x > 0).unwrap() + 1;
        let mut d = sites.to_vec();
        d[last - 1] -= 1;
        let h = heights(&d);
        (1..=n)
            .filter(|&k| h[k - 1] == 0)
            .map(|k| &(&split_weight(n, k, last) * &windows_of_c(&sites[..k - 1])) * &windows_of_c(&sites[k..]))
            .sum()
    }

    #[test]
    fn windows_of_c_reading_disagrees_with_oracle() {
        let c = cfg("3,0,0,2,0");
        assert_eq!(windows_of_c(c.sites()), QPoly::zero());
        assert_ne!(windows_of_c(c.sites()), remixed_exact(&c).unwrap());
    }

    #[test]
    fn agrees_with_oracle_up_to_six() {
        let mut ind = FinalInduction::new();
        for n in 1..=6 {
            for c in configurations(n) {
                assert_eq!(ind.eval(&c), remixed_exact(&c).unwrap(), "{c}");
            }
        }
        assert!(ind.cached() > 0);
    }
}
