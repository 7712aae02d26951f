//! Seeded Monte Carlo of the ball dynamics, one single-site bounce at a
//! time.
//!
//! While some site holds two or more balls, the top ball of the leftmost
//! such site moves one step: left with probability `q/(1+q)`, right
//! otherwise. A trial succeeds when the balls end up exactly on `[1;n]`.
//!
//! Randomness is ChaCha8 seeded with `seed_from_u64`. The left step is
//! taken when a uniform `u64` draw is below `floor(2^64 · q/(1+q))`, which
//! is computed exactly, so runs are bit-reproducible across platforms.
//! Trials are grouped in batches of [`BATCH`]; batch `b` uses the seed
//! `splitmix64(seed + (b + 1) · 0x9E3779B97F4A7C15)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::Configuration;
use crate::qcalc::QRat;

pub const BATCH: u64 = 4096;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum SimulateError {
    #[error("q = {0} is negative")]
    NegativeQ(String),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("drop order does not have the configuration's content")]
    BadOrder,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimResult {
    pub trials: u64,
    pub successes: u64,
    pub q: QRat,
    pub seed: u64,
}

impl SimResult {
    pub fn estimate(&self) -> QRat {
        QRat::new(self.successes as i64, self.trials as i64)
    }

    /// `sqrt(p(1-p)/trials)` for a reference probability `p`.
    pub fn sigma(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// `|estimate - p|` in units of [`SimResult::sigma`]; zero when both
    /// vanish and infinite when only the deviation does not.
    pub fn deviation_sigmas(&self, exact: &QRat) -> f64 {
        let p = exact.to_f64();
        let diff = (self.successes as f64 / self.trials as f64 - p).abs();
        let sigma = self.sigma(p);
        if diff == 0.0 {
            0.0
        } else {
            diff / sigma
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SimResultWire {
    trials: u64,
    successes: u64,
    q: QRat,
    seed: String,
}

impl Serialize for SimResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SimResultWire {
            trials: self.trials,
            successes: self.successes,
            q: self.q.clone(),
            seed: format!("{:#x}", self.seed),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = SimResultWire::deserialize(d)?;
        let hex = w.seed.strip_prefix("0x").ok_or_else(|| D::Error::custom("seed must start with 0x"))?;
        let seed = u64::from_str_radix(hex, 16).map_err(D::Error::custom)?;
        if w.successes > w.trials {
            return Err(D::Error::custom("more successes than trials"));
        }
        Ok(SimResult { trials: w.trials, successes: w.successes, q: w.q, seed })
    }
}

impl fmt::Display for SimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} at q = {} (seed {:#x})", self.successes, self.trials, self.q, self.seed)
    }
}

/// A single bounce direction generator for a fixed `q`.
pub struct Walker {
    rng: ChaCha8Rng,
    threshold: u64,
}

impl Walker {
    pub fn new(q0: &QRat, seed: u64) -> Result<Self, SimulateError> {
        Ok(Walker { rng: ChaCha8Rng::seed_from_u64(seed), threshold: left_threshold(q0)? })
    }

    pub fn steps_left(&mut self) -> bool {
        self.rng.next_u64() < self.threshold
    }
}

/// `floor(2^64 · q/(1+q))`.
pub fn left_threshold(q0: &QRat) -> Result<u64, SimulateError> {
    if q0.is_negative() {
        return Err(SimulateError::NegativeQ(q0.to_string()));
    }
    let (u, v) = (q0.numer(), q0.denom());
    let t: BigInt = (u << 64u32) / (u + v);
    Ok(t.to_u64().expect("q/(1+q) < 1"))
}

fn settle(balls: &mut BTreeMap<i64, u32>, walker: &mut Walker) {
    while let Some((&site, _)) = balls.iter().find(|(_, &k)| k > 1) {
        *balls.get_mut(&site).expect("present") -= 1;
        let to = if walker.steps_left() { site - 1 } else { site + 1 };
        *balls.entry(to).or_insert(0) += 1;
    }
}

/// Runs the dynamics from `c` with every ball already placed; returns the
/// final occupied sites, which may leave `[1;n]`.
pub fn run_once(c: &Configuration, walker: &mut Walker) -> Vec<i64> {
    let mut balls: BTreeMap<i64, u32> = (1..=c.n())
        .filter(|&j| c.at(j) > 0)
        .map(|j| (j as i64, c.at(j) as u32))
        .collect();
    settle(&mut balls, walker);
    balls.into_keys().collect()
}

/// Drops balls one at a time on the sites of `order`, settling after each.
pub fn run_once_in_order(order: &[usize], walker: &mut Walker) -> Vec<i64> {
    let mut balls: BTreeMap<i64, u32> = BTreeMap::new();
    for &j in order {
        *balls.entry(j as i64).or_insert(0) += 1;
        settle(&mut balls, walker);
    }
    balls.into_keys().collect()
}

fn is_success(support: &[i64], n: usize) -> bool {
    support.len() == n && support.first() == Some(&1) && support.last() == Some(&(n as i64))
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(GOLDEN);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn batch_seed(seed: u64, batch: u64) -> u64 {
    splitmix64(seed.wrapping_add((batch + 1).wrapping_mul(GOLDEN)))
}

fn estimate_with(
    q0: &QRat,
    trials: u64,
    seed: u64,
    n: usize,
    mut run: impl FnMut(&mut Walker) -> Vec<i64>,
) -> Result<SimResult, SimulateError> {
    if trials == 0 {
        return Err(SimulateError::NoTrials);
    }
    let mut successes = 0;
    for b in 0..trials.div_ceil(BATCH) {
        let mut walker = Walker::new(q0, batch_seed(seed, b))?;
        let count = BATCH.min(trials - b * BATCH);
        successes += (0..count).filter(|_| is_success(&run(&mut walker), n)).count() as u64;
    }
    Ok(SimResult { trials, successes, q: q0.clone(), seed })
}

pub fn estimate_success(c: &Configuration, q0: &QRat, trials: u64, seed: u64) -> Result<SimResult, SimulateError> {
    estimate_with(q0, trials, seed, c.n(), |w| run_once(c, w))
}

/// Same estimate with balls dropped in `order` (a rearrangement of `c`'s
/// balls).
pub fn estimate_success_in_order(
    c: &Configuration,
    order: &[usize],
    q0: &QRat,
    trials: u64,
    seed: u64,
) -> Result<SimResult, SimulateError> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != c.left_to_right_order() {
        return Err(SimulateError::BadOrder);
    }
    estimate_with(q0, trials, seed, c.n(), |w| run_once_in_order(order, w))
}
