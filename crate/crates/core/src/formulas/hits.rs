//! q-hit numbers and their realisation as connected configurations.
//!
//! For a partition `λ` inside the staircase (`λ_k <= n + 1 - k`),
//!
//! ```text
//! Σ_i t^i H_i(λ, q) = (t;q)_{n+1} Σ_j t^j ∏_{i=1}^{n} [j + i - λ_{n+1-i}]
//! ```
//!
//! At `q = 1`, `H_i` counts permutations of `[n]` placing exactly `i`
//! rooks on the board whose row `k` covers columns `1..=λ_k`.

use super::families::a_connected;
use super::FormulaError;
use crate::qcalc::{q_pochhammer, shifted_bracket_product, QPoly, TSeries};

/// `H_i(λ, q)` with `λ` padded by zeros to length `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HitIndex {
    lambda: Vec<usize>,
    i: usize,
    n: usize,
}

impl HitIndex {
    pub fn new(lambda: &[usize], i: usize, n: usize) -> Result<Self, FormulaError> {
        let lambda = validate_partition(lambda, n)?;
        if i > n {
            return Err(FormulaError::BadHitIndex { i, n });
        }
        Ok(HitIndex { lambda, i, n })
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The factor offsets `e_i = i - λ_{n+1-i}` for `i = 1..=n`.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.lambda)
    }
}

fn validate_partition(lambda: &[usize], n: usize) -> Result<Vec<usize>, FormulaError> {
    let bad = |why: &str| Err(FormulaError::BadPartition(format!("{lambda:?} with n = {n}: {why}")));
    if n == 0 {
        return bad("size must be positive");
    }
    if lambda.len() > n {
        return bad("more than n parts");
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return bad("parts are not weakly decreasing");
    }
    let mut padded = lambda.to_vec();
    padded.resize(n, 0);
    if let Some(k) = (1..=n).find(|&k| padded[k - 1] > n + 1 - k) {
        return bad(&format!("part {k} leaves the staircase"));
    }
    Ok(padded)
}

fn offsets(lambda: &[usize]) -> Vec<usize> {
    let n = lambda.len();
    (1..=n).map(|i| i - lambda[n - i]).collect()
}

/// The whole row `H_0, …, H_n`.
pub fn q_hit_row(lambda: &[usize], n: usize) -> Result<Vec<QPoly>, FormulaError> {
    let lambda = validate_partition(lambda, n)?;
    let e = offsets(&lambda);
    let rhs = TSeries::from_fn(n + 1, |j| shifted_bracket_product(j, &e));
    Ok(q_pochhammer(n + 1, n + 1).mul(&rhs).into_tcoeffs())
}

pub fn q_hit(h: &HitIndex) -> QPoly {
    let mut row = q_hit_row(&h.lambda, h.n).expect("validated on construction");
    row.swap_remove(h.i)
}

/// A hole-free core and shift with `A_(0^shift, gamma, …) = H_i(λ, q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectedMatch {
    pub gamma: Vec<usize>,
    pub shift: usize,
    pub n: usize,
}

/// Matches the factor offsets `e_i` against the ball multiset of a core.
/// When some `e_i = 0` the `j = 0` term vanishes and re-indexing `j` moves
/// everything one step: the multiset becomes `e_i + 1` and the shift
/// `i - 1`. Out-of-window indices give [`FormulaError::Vanishing`] once the
/// hit number has been confirmed to be zero.
pub fn hit_to_connected(h: &HitIndex) -> Result<ConnectedMatch, FormulaError> {
    let e = h.offsets();
    let s = usize::from(e.contains(&0));
    let top = e.iter().max().expect("n >= 1") + s;
    let mut gamma = vec![0; top];
    for &x in &e {
        gamma[x + s - 1] += 1;
    }
    let target = q_hit(h);
    let shift = match h.i.checked_sub(s).filter(|&k| k + gamma.len() <= h.n) {
        Some(k) => k,
        None if target.is_zero() => return Err(FormulaError::Vanishing { i: h.i }),
        None => return Err(FormulaError::NoMatch(format!("{h:?}: no shift in range"))),
    };
    let found = a_connected(&gamma, shift, h.n).map_err(|e| FormulaError::NoMatch(format!("{h:?}: {e}")))?;
    if found != target {
        return Err(FormulaError::NoMatch(format!("{h:?}: {found} != {target}")));
    }
    Ok(ConnectedMatch { gamma, shift, n: h.n })
}

/// All partitions (padded to length `n`) inside the staircase of size `n`.
pub fn staircase_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        let k = prefix.len() + 1;
        if k > n {
            out.push(prefix.clone());
            return;
        }
        let cap = prefix.last().copied().unwrap_or(usize::MAX).min(n + 1 - k);
        for part in (0..=cap).rev() {
            prefix.push(part);
            extend(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, &mut out);
    out
}

/// Number of permutations of `[n]` with exactly `i` cells on the board,
/// for each `i`, by enumeration (`n <= 8` is comfortable).
pub fn hit_counts_brute_force(lambda: &[usize], n: usize) -> Vec<u64> {
    let mut padded = lambda.to_vec();
    padded.resize(n, 0);
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let hits = (0..n).filter(|&row| perm[row] <= padded[row]).count();
        counts[hits] += 1;
        if !next_permutation(&mut perm) {
            return counts;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::{q_factorial, q_int};
    use num_bigint::BigInt;

    #[test]
    fn examples() {
        let h = HitIndex::new(&[0, 0], 0, 2).unwrap();
        assert_eq!(q_hit(&h), &q_int(1) * &q_int(2));
        let row = q_hit_row(&[1], 1).unwrap();
        assert_eq!(row, vec![QPoly::zero(), QPoly::one()]);
    }

    #[test]
    fn empty_board_is_factorial() {
        for n in 1..=6 {
            let row = q_hit_row(&[], n).unwrap();
            assert_eq!(row[0], q_factorial(n));
            assert!(row[1..].iter().all(QPoly::is_zero));
        }
    }

    #[test]
    fn q_one_matches_rook_placements() {
        for n in 1..=5 {
            for lambda in staircase_partitions(n) {
                let row = q_hit_row(&lambda, n).unwrap();
                let counts = hit_counts_brute_force(&lambda, n);
                for (i, (h, &c)) in row.iter().zip(&counts).enumerate() {
                    assert_eq!(h.eval_one(), BigInt::from(c), "λ={lambda:?} i={i}");
                }
            }
        }
    }

    #[test]
    fn staircase_counts_are_catalan() {
        let sizes: Vec<usize> = (1..=6).map(|n| staircase_partitions(n).len()).collect();
        assert_eq!(sizes, vec![2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn connected_realisation() {
        let m = hit_to_connected(&HitIndex::new(&[], 0, 4).unwrap()).unwrap();
        assert_eq!(m, ConnectedMatch { gamma: vec![1, 1, 1, 1], shift: 0, n: 4 });
        let m = hit_to_connected(&HitIndex::new(&[1], 1, 1).unwrap()).unwrap();
        assert_eq!(m, ConnectedMatch { gamma: vec![1], shift: 0, n: 1 });
        assert_eq!(
            hit_to_connected(&HitIndex::new(&[1], 0, 1).unwrap()),
            Err(FormulaError::Vanishing { i: 0 })
        );
        for n in 1..=5 {
            for lambda in staircase_partitions(n) {
                for i in 0..=n {
                    let h = HitIndex::new(&lambda, i, n).unwrap();
                    match hit_to_connected(&h) {
                        Ok(_) => {}
                        Err(FormulaError::Vanishing { .. }) => assert!(q_hit(&h).is_zero()),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(matches!(HitIndex::new(&[1, 2], 0, 2), Err(FormulaError::BadPartition(_))));
        assert!(matches!(HitIndex::new(&[3], 0, 2), Err(FormulaError::BadPartition(_))));
        assert!(matches!(HitIndex::new(&[0, 0, 0], 0, 2), Err(FormulaError::BadPartition(_))));
        assert_eq!(HitIndex::new(&[], 3, 2), Err(FormulaError::BadHitIndex { i: 3, n: 2 }));
    }
}
