//! Exact success probabilities of the ball-drop dynamics.
//!
//! Balls are dropped one at a time. A ball landing on an occupied site
//! performs a biased walk across the occupied block until it reaches the
//! nearest hole on either side; the big-step weights give the exit law of
//! that walk directly. A ball that settles outside `[1;n]` never moves
//! again, so such trajectories are discarded as failures immediately.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::EngineError;
use crate::config::Configuration;
use crate::qcalc::{q_int, QPoly, QRat};

/// Largest supported number of sites (the occupied set is a bit mask).
pub const MAX_SITES: usize = 63;

/// The set of settled balls, all inside `[1;n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OccupiedState {
    mask: u64,
    n: usize,
}

impl OccupiedState {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SITES, "at most {MAX_SITES} sites are supported");
        OccupiedState { mask: 0, n }
    }

    pub fn from_sites(n: usize, sites: &[usize]) -> Self {
        sites.iter().fold(OccupiedState::empty(n), |s, &j| s.with(j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sites outside `[1;n]` are never occupied.
    pub fn contains(&self, site: i64) -> bool {
        site >= 1 && site <= self.n as i64 && self.mask & (1 << (site - 1)) != 0
    }

    pub fn with(self, site: usize) -> Self {
        assert!((1..=self.n).contains(&site));
        OccupiedState { mask: self.mask | (1 << (site - 1)), n: self.n }
    }

    pub fn balls_dropped(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_full(&self) -> bool {
        self.balls_dropped() == self.n
    }

    pub fn sites(&self) -> Vec<usize> {
        (1..=self.n).filter(|&j| self.contains(j as i64)).collect()
    }

    /// Distances `(a, b)` from `j` to the nearest hole on the left and on
    /// the right; `(0, 0)` when `j` itself is a hole.
    pub fn hole_distances(&self, j: usize) -> (usize, usize) {
        let j = j as i64;
        let mut a = 0;
        while self.contains(j - a) {
            a += 1;
        }
        let mut b = 0;
        while self.contains(j + b) {
            b += 1;
        }
        (a as usize, b as usize)
    }
}

/// One exit of a big step, with its probability as a rational function of
/// `q` written `numerator / denominator`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigStepWeight {
    pub landing_site: i64,
    pub numerator: QPoly,
    pub denominator: QPoly,
}

impl BigStepWeight {
    pub fn eval(&self, q0: &QRat) -> QRat {
        &self.numerator.eval(q0) / &self.denominator.eval(q0)
    }
}

/// Exits of a ball dropped on `j`: `q^a [b]/[a+b]` to the left hole and
/// `[a]/[a+b]` to the right hole. Exits outside `[1;n]` are omitted, so the
/// returned weights sum to less than one when mass is lost.
pub fn big_step_weights(state: &OccupiedState, j: usize) -> Vec<BigStepWeight> {
    let (a, b) = state.hole_distances(j);
    if a == 0 {
        return vec![BigStepWeight {
            landing_site: j as i64,
            numerator: QPoly::one(),
            denominator: QPoly::one(),
        }];
    }
    let denominator = q_int(a + b);
    let mut out = Vec::with_capacity(2);
    let left = j as i64 - a as i64;
    if left >= 1 {
        out.push(BigStepWeight {
            landing_site: left,
            numerator: q_int(b).shift(a),
            denominator: denominator.clone(),
        });
    }
    let right = (j + b) as i64;
    if right <= state.n() as i64 {
        out.push(BigStepWeight {
            landing_site: right,
            numerator: q_int(a),
            denominator,
        });
    }
    out
}

/// Probability that dropping `c`'s balls left to right fills `[1;n]`.
pub fn success_probability(c: &Configuration, q0: &QRat) -> Result<QRat, EngineError> {
    drop_probability(c.n(), &c.left_to_right_order(), q0)
}

/// Same probability with an arbitrary drop order of content `c`.
pub fn drop_order_check(c: &Configuration, order: &[usize], q0: &QRat) -> Result<QRat, EngineError> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != c.left_to_right_order() {
        return Err(EngineError::BadContent);
    }
    drop_probability(c.n(), order, q0)
}

/// Homogenised q-arithmetic at `q0 = u/v`: every big-step weight is an
/// integer over `N_{a+b}` where `N_k = Σ_{i<k} u^i v^(k-1-i)`.
struct Homogeneous {
    u_pow: Vec<BigInt>,
    v_pow: Vec<BigInt>,
    qint: Vec<BigInt>,
}

impl Homogeneous {
    fn new(q0: &QRat, max: usize) -> Self {
        let (u, v) = (q0.numer().clone(), q0.denom().clone());
        let u_pow: Vec<BigInt> = (0..=max).map(|k| Pow::pow(&u, k)).collect();
        let v_pow: Vec<BigInt> = (0..=max).map(|k| Pow::pow(&v, k)).collect();
        let qint = (0..=max)
            .map(|k| (0..k).map(|i| &u_pow[i] * &v_pow[k - 1 - i]).sum())
            .collect();
        Homogeneous { u_pow, v_pow, qint }
    }
}

fn drop_probability(n: usize, order: &[usize], q0: &QRat) -> Result<QRat, EngineError> {
    if q0.is_negative() {
        return Err(EngineError::NegativeQ(q0.to_string()));
    }
    if n > MAX_SITES {
        return Err(EngineError::TooManySites(n));
    }
    let h = Homogeneous::new(q0, n + 1);
    // State weights share one denominator; the true probability of a state
    // is weight / denom.
    let mut states: BTreeMap<OccupiedState, BigInt> = BTreeMap::new();
    states.insert(OccupiedState::empty(n), BigInt::one());
    let mut denom = BigInt::one();

    for &j in order {
        let lcm = states
            .keys()
            .map(|s| s.hole_distances(j))
            .filter(|&(a, _)| a > 0)
            .fold(BigInt::one(), |acc, (a, b)| acc.lcm(&h.qint[a + b]));
        let mut next: BTreeMap<OccupiedState, BigInt> = BTreeMap::new();
        for (state, w) in states {
            let (a, b) = state.hole_distances(j);
            if a == 0 {
                *next.entry(state.with(j)).or_default() += &w * &lcm;
                continue;
            }
            let scale = &lcm / &h.qint[a + b];
            if j > a {
                let mass = &w * &h.u_pow[a] * &h.qint[b] * &scale;
                if !mass.is_zero() {
                    *next.entry(state.with(j - a)).or_default() += mass;
                }
            }
            if j + b <= n {
                let mass = &w * &h.qint[a] * &h.v_pow[b] * &scale;
                if !mass.is_zero() {
                    *next.entry(state.with(j + b)).or_default() += mass;
                }
            }
        }
        next.retain(|_, w| !w.is_zero());
        states = next;
        denom *= lcm;
    }

    let full = states
        .into_iter()
        .filter(|(s, _)| s.is_full())
        .map(|(_, w)| w)
        .sum::<BigInt>();
    Ok(QRat::from(BigRational::new(full, denom)))
}
