//! Standard q-analogs: q-integers, q-factorials, Gaussian binomials and the
//! finite q-Pochhammer symbol as a series in `t`.

use num_bigint::BigInt;
use num_traits::One;

use super::{QPoly, TSeries};

/// `[a] = 1 + q + … + q^(a-1)`, with `[0] = 0`.
pub fn q_int(a: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); a])
}

/// `[n]! = [1][2]…[n]`.
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial `[n choose k]_q`; zero when `k` is out of `[0, n]`.
pub fn q_binomial(n: usize, k: i64) -> QPoly {
    if k < 0 || k as usize > n {
        return QPoly::zero();
    }
    let k = (k as usize).min(n - k as usize);
    // Each partial product [n-k+1]…[n-k+i] / [i]! is itself [n-k+i choose i].
    let mut acc = QPoly::one();
    for i in 1..=k {
        acc = (&acc * &q_int(n - k + i))
            .div_exact(&q_int(i))
            .expect("Gaussian binomial partial products are polynomials");
    }
    acc
}

/// `(t;q)_n = Π_{i<n} (1 - t q^i)`, truncated to `trunc` terms of `t`.
pub fn q_pochhammer(n: usize, trunc: usize) -> TSeries {
    let mut acc = TSeries::from_coeffs(vec![QPoly::one()], trunc);
    for i in 0..n {
        let factor = TSeries::from_coeffs(vec![QPoly::one(), -QPoly::q_pow(i)], trunc);
        acc = acc.mul(&factor);
    }
    acc
}

/// `n(n-1)/2` as used for `q^{binom(n,2)}` exponents.
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `∏_{a ∈ multiset} [j + a]`.
pub fn shifted_bracket_product(j: usize, multiset: &[usize]) -> QPoly {
    multiset.iter().map(|&a| q_int(j + a)).product()
}
