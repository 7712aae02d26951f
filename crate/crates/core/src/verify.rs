//! Exhaustive identity checks of the closed forms against the oracle.
//!
//! Each property counts how many instances it checked and how many failed,
//! keeping the first failure for diagnosis.

use std::collections::{BTreeSet, HashMap};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::config::{configurations, max_weakly_shift, one_hole_decompose, Configuration, OneHoleShape};
use crate::engine::{drop_order_check, remixed_exact, success_probability};
use crate::formulas::{
    a_almost_lukasiewicz, a_connected, a_lukasiewicz, a_one_hole, a_weakly_lukasiewicz, corrective_series,
    generating_series,
};
use crate::qcalc::{binom2, q_binomial, q_factorial, q_int, shifted_bracket_product, QPoly, QRat, TSeries};

/// Memoised drop-dynamics oracle.
#[derive(Default)]
pub struct Oracle {
    memo: HashMap<Configuration, QPoly>,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    pub fn get(&mut self, c: &Configuration) -> QPoly {
        if let Some(p) = self.memo.get(c) {
            return p.clone();
        }
        let p = remixed_exact(c).unwrap_or_else(|e| panic!("oracle failed on {c}: {e}"));
        self.memo.insert(c.clone(), p.clone());
        p
    }

    /// `A_(0^i, gamma, 0^(n-m-i))`.
    pub fn shifted(&mut self, gamma: &[usize], i: usize, n: usize) -> QPoly {
        self.get(&Configuration::from_core(i, gamma, n).expect("shift in range"))
    }

    /// `Σ_{i <= n-m} t^i A_(shift i)` truncated at `trunc`; empty when the
    /// core does not fit in `n` sites.
    pub fn shift_series(&mut self, gamma: &[usize], n: usize, trunc: usize) -> TSeries {
        let top = n.checked_sub(gamma.len());
        TSeries::from_fn(trunc, |i| match top {
            Some(top) if i <= top => self.shifted(gamma, i, n),
            _ => QPoly::zero(),
        })
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl PropertyReport {
    fn new(name: &'static str) -> Self {
        PropertyReport { name, checked: 0, failures: 0, first_failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Families,
    Congruence,
    Corrective,
    Abelian,
    All,
}

pub fn run_suite(suite: Suite, nmax: usize, oracle: &mut Oracle) -> Vec<PropertyReport> {
    match suite {
        Suite::Families => families(nmax, oracle),
        Suite::Congruence => vec![congruence(nmax, oracle)],
        Suite::Corrective => corrective(nmax, oracle),
        Suite::Abelian => vec![abelian(nmax, 5, &[QRat::new(1, 2), QRat::one(), QRat::from(2)])],
        Suite::All => [Suite::Families, Suite::Congruence, Suite::Corrective, Suite::Abelian]
            .into_iter()
            .flat_map(|s| run_suite(s, nmax, oracle))
            .collect(),
    }
}

/// Each closed form against the oracle on every configuration it covers.
pub fn families(nmax: usize, oracle: &mut Oracle) -> Vec<PropertyReport> {
    let mut luka = PropertyReport::new("lukasiewicz");
    let mut almost = PropertyReport::new("almost_lukasiewicz");
    let mut connected = PropertyReport::new("connected");
    let mut weakly = PropertyReport::new("weakly_lukasiewicz");
    let mut one_hole = PropertyReport::new("one_hole");
    for n in 1..=nmax {
        for c in configurations(n) {
            let f = c.classify();
            let core = c.core();
            let mut check = |rep: &mut PropertyReport, got: Result<QPoly, _>| {
                let want = oracle.get(&c);
                let ok = got.as_ref() == Ok(&want);
                rep.record(ok, || format!("{c}: formula {got:?}, oracle {want}"));
            };
            if f.is_lukasiewicz {
                check(&mut luka, a_lukasiewicz(&c));
            }
            if f.almost_defect.is_some() {
                check(&mut almost, a_almost_lukasiewicz(&c));
            }
            if f.is_connected {
                check(&mut connected, a_connected(&core.gamma, core.leading, n));
            }
            if f.is_weakly_lukasiewicz {
                check(&mut weakly, a_weakly_lukasiewicz(&core.gamma, core.leading, n));
            }
            if f.is_one_hole {
                check(&mut one_hole, a_one_hole(&c));
            }
        }
    }
    vec![luka, almost, connected, weakly, one_hole]
}

/// Distinct cores with `n` balls.
pub fn cores(n: usize) -> Vec<Vec<usize>> {
    configurations(n)
        .map(|c| c.core().gamma)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// For every core with a weakly Lukasiewicz shift `k` (the largest), the
/// shifted `A`s agree with the generating side modulo `t^(k+1)`.
pub fn congruence(nmax: usize, oracle: &mut Oracle) -> PropertyReport {
    let mut rep = PropertyReport::new("weakly_congruence");
    for n in 1..=nmax {
        for gamma in cores(n) {
            let Ok(k) = max_weakly_shift(&gamma, n) else { continue };
            let lhs = oracle.shift_series(&gamma, n, k + 1);
            let rhs = generating_series(&gamma, n, k + 1);
            let ok = lhs.equal_mod(&rhs, k + 1).expect("both truncated at k+1");
            rep.record(ok, || format!("core {gamma:?}, n = {n}, k = {k}"));
        }
    }
    rep
}

/// `P_gamma` as defined: generating side minus the shifted `A`s.
pub fn corrective_by_definition(gamma: &[usize], n: usize, trunc: usize, oracle: &mut Oracle) -> TSeries {
    &generating_series(gamma, n, trunc) - &oracle.shift_series(gamma, n, trunc)
}

fn one_hole_cores(n: usize) -> Vec<OneHoleShape> {
    cores(n)
        .into_iter()
        .filter_map(|g| one_hole_decompose(&Configuration::from_core(0, &g, n).ok()?).ok())
        .collect()
}

/// `∏_{a ∈ MSet(alpha)} [ℓ+1-a] · ∏_{b ∈ MSet(beta)} [b]` and the exponent
/// `Σ (a - ℓ) <= 0` of the accompanying power of `q`.
pub fn lemma_prefactor(shape: &OneHoleShape) -> (QPoly, i64) {
    let ell = shape.ell();
    let alpha = crate::config::ball_order(&shape.alpha);
    let poly = &alpha.iter().map(|&a| q_int(ell + 1 - a)).product::<QPoly>()
        * &shifted_bracket_product(0, &crate::config::ball_order(&shape.beta));
    (poly, alpha.iter().map(|&a| a as i64 - ell as i64).sum())
}

/// The corrective-series formula against its definition, and the
/// reduction to two-site blocks `t^(ℓ-1) P_(α,0,β) = P_(p,0,r) · K`,
/// both on definition-side series.
pub fn corrective(nmax: usize, oracle: &mut Oracle) -> Vec<PropertyReport> {
    let mut definition = PropertyReport::new("corrective_definition");
    let mut factorization = PropertyReport::new("corrective_factorization");
    for n in 2..=nmax {
        for shape in one_hole_cores(n) {
            let gamma = shape.gamma();
            let trunc = n + 2;
            let by_def = corrective_by_definition(&gamma, n, trunc, oracle);
            let formula = corrective_series(&shape.alpha, &shape.beta).expect("one-hole shape");
            let padded = TSeries::from_coeffs(formula.tcoeffs().to_vec(), trunc);
            definition.record(padded == by_def, || format!("core {gamma:?}: {padded:?} vs {by_def:?}"));

            let two = [shape.p(), 0, shape.r()];
            let base = corrective_by_definition(&two, n, trunc + 1, oracle);
            let (k, offset) = lemma_prefactor(&shape);
            let lhs = by_def.shift_t(shape.ell() - 1);
            let lhs = TSeries::from_fn(lhs.trunc(), |i| {
                lhs.coeff(i).expect("in range").shift((-offset) as usize)
            });
            let rhs = base.scale(&k).truncate(lhs.trunc());
            factorization.record(lhs == rhs, || format!("core {gamma:?}"));
        }
    }
    vec![definition, factorization]
}

/// `Q_r = t^(1-p) q^(-binom(p,2)) P_(p,0,r)` from the definition side, for
/// `r >= 1`.
pub fn normalized_q(p: usize, r: usize, oracle: &mut Oracle) -> TSeries {
    let n = p + r;
    let pser = corrective_by_definition(&[p, 0, r], n, n + 2, oracle);
    TSeries::from_fn(r + 1, |k| {
        pser.coeff(p - 1 + k)
            .expect("in range")
            .unshift(binom2(p))
            .expect("divisible by q^binom(p,2)")
    })
}

/// `q^r [p+r choose r] + (1 - t q^(p+r)) Q_(r-1)`, truncated like `Q_r`.
pub fn q_recurrence_step(p: usize, r: usize, prev: &TSeries) -> TSeries {
    let prev = TSeries::from_coeffs(prev.tcoeffs().to_vec(), r + 1);
    let mut out = &prev - &prev.shift_t(1).scale(&QPoly::q_pow(p + r));
    let mut c0 = out.tcoeffs().to_vec();
    c0[0] += &q_binomial(p + r, r as i64).shift(r);
    out = TSeries::from_coeffs(c0, r + 1);
    out
}

/// `Σ_{i=0}^{r} (-t)^i q^(p i + binom(i+1,2)) [p+r+1 choose r-i]`.
pub fn q_closed_form(p: usize, r: usize) -> TSeries {
    TSeries::from_fn(r + 1, |i| {
        let term = q_binomial(p + r + 1, (r - i) as i64).shift(p * i + binom2(i + 1));
        if i % 2 == 0 {
            term
        } else {
            -term
        }
    })
}

/// `q^(p(p-3)/2) [r-1]! ([r+1]^p - [p+r choose r])` for `p >= 2`, `r >= 1`.
pub fn power_minus_binomial(p: usize, r: usize) -> QPoly {
    (&q_factorial(r - 1) * &(&q_int(r + 1).pow(p as u32) - &q_binomial(p + r, r as i64)))
        .shift_signed(p as i64 * (p as i64 - 3) / 2)
        .expect("difference is divisible by q")
}

/// `(0^(p-2), p, 0, 1^(r-1))`, with `p + r - 1` balls.
pub fn power_minus_binomial_config(p: usize, r: usize) -> Configuration {
    let mut sites = vec![0; p - 2];
    sites.push(p);
    sites.push(0);
    sites.extend(std::iter::repeat_n(1, r - 1));
    Configuration::new(sites).expect("p + r - 1 balls on p + r - 1 sites")
}

/// Deterministic Fisher–Yates shuffle driven by ChaCha8.
pub fn shuffled(items: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v = items.to_vec();
    for i in (1..v.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
    v
}

/// Success probability is the same for `orders` random drop orders at each
/// of `qs`. Up to 300 configurations per `n` are sampled at a fixed stride.
pub fn abelian(nmax: usize, orders: usize, qs: &[QRat]) -> PropertyReport {
    let mut rep = PropertyReport::new("abelian");
    let mut rng = ChaCha8Rng::seed_from_u64(0xABE1);
    for n in 1..=nmax {
        let all: Vec<Configuration> = configurations(n).collect();
        let stride = all.len().div_ceil(300);
        for c in all.iter().step_by(stride) {
            let base: Vec<QRat> = qs.iter().map(|q| success_probability(c, q).expect("q >= 0")).collect();
            for _ in 0..orders {
                let order = shuffled(&c.left_to_right_order(), &mut rng);
                for (q, want) in qs.iter().zip(&base) {
                    let got = drop_order_check(c, &order, q).expect("same content");
                    rep.record(&got == want, || format!("{c} order {order:?} at q = {q}: {got} vs {want}"));
                }
            }
        }
    }
    rep
}
