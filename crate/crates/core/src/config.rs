//! Ball configurations on `[1;n]`, their structural data, and the family
//! classifiers.
//!
//! Sites are 1-based throughout the public API: `sites()[i - 1]` is the
//! number of balls on site `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("configuration has no sites")]
    Empty,
    #[error("entries sum to {sum} but there are {n} sites")]
    BadSum { sum: usize, n: usize },
    #[error("entry {value} at site {site} is negative")]
    Negative { site: usize, value: i64 },
    #[error("cannot parse configuration entry {0:?}")]
    Parse(String),
    #[error("site {0} holds no ball")]
    EmptySite(usize),
    #[error("site {site} is outside [1;{n}]")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("core must be nonempty with nonzero end sites")]
    BadCore,
    #[error("core of {sites} sites does not fit at shift {shift} among {n} sites")]
    ShiftOutOfRange { shift: usize, sites: usize, n: usize },
    #[error("no shift of the core is weakly Lukasiewicz")]
    NoWeaklyShift,
    #[error("configuration core does not have exactly one empty site")]
    NotOneHole,
}

/// `(c_1, …, c_n)` with `Σ c_i = n ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    sites: Vec<usize>,
}

impl Configuration {
    pub fn new(sites: Vec<usize>) -> Result<Self, ConfigError> {
        if sites.is_empty() {
            return Err(ConfigError::Empty);
        }
        let sum: usize = sites.iter().sum();
        if sum != sites.len() {
            return Err(ConfigError::BadSum { sum, n: sites.len() });
        }
        Ok(Configuration { sites })
    }

    /// `(0^shift, gamma, 0^(n - |gamma| - shift))`.
    pub fn from_core(shift: usize, gamma: &[usize], n: usize) -> Result<Self, ConfigError> {
        validate_core(gamma)?;
        if shift + gamma.len() > n {
            return Err(ConfigError::ShiftOutOfRange { shift, sites: gamma.len(), n });
        }
        let mut sites = vec![0; n];
        sites[shift..shift + gamma.len()].copy_from_slice(gamma);
        Configuration::new(sites)
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    /// Balls on site `j` (1-based).
    pub fn at(&self, j: usize) -> usize {
        self.sites[j - 1]
    }

    /// `H_{c,k}` for `k = 1..=n`.
    pub fn heights(&self) -> Vec<i64> {
        heights(&self.sites)
    }

    /// The non-decreasing ball sequence of content `c`, which is also
    /// `MSet(c)` in sorted order.
    pub fn left_to_right_order(&self) -> Vec<usize> {
        ball_order(&self.sites)
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.at(i) > 0).collect()
    }

    pub fn core(&self) -> CoreDecomposition {
        let first = self.sites.iter().position(|&x| x > 0).expect("n >= 1 balls");
        let last = self.sites.iter().rposition(|&x| x > 0).expect("n >= 1 balls");
        CoreDecomposition {
            leading: first,
            gamma: self.sites[first..=last].to_vec(),
            trailing: self.n() - 1 - last,
        }
    }

    pub fn reverse(&self) -> Configuration {
        Configuration {
            sites: self.sites.iter().rev().copied().collect(),
        }
    }

    /// `c + {j}`: one extra ball on site `j`.
    pub fn add_ball(&self, j: usize) -> Result<SubConfiguration, ConfigError> {
        SubConfiguration::from(self.clone()).add_ball(j)
    }

    /// `c - {j}`: one ball fewer on site `j`.
    pub fn remove_ball(&self, j: usize) -> Result<SubConfiguration, ConfigError> {
        SubConfiguration::from(self.clone()).remove_ball(j)
    }

    pub fn classify(&self) -> Classification {
        let heights = self.heights();
        let negatives: Vec<usize> = (0..heights.len()).filter(|&k| heights[k] < 0).collect();
        let almost_defect = match negatives.as_slice() {
            [k] => {
                assert_eq!(heights[*k], -1, "a lone negative height is always -1");
                Some(k + 1)
            }
            _ => None,
        };
        let holes = self.core().gamma.iter().filter(|&&x| x == 0).count();
        Classification {
            is_lukasiewicz: negatives.is_empty(),
            almost_defect,
            is_connected: holes == 0,
            is_weakly_lukasiewicz: is_weakly_lukasiewicz_order(&self.left_to_right_order()),
            is_one_hole: holes == 1,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sites.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration{self}")
    }
}

/// Comma-separated decimal entries; surrounding whitespace is ignored.
impl FromStr for Configuration {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_config(text)
    }
}

pub fn parse_config(text: &str) -> Result<Configuration, ConfigError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ConfigError::Empty);
    }
    let mut sites = Vec::new();
    for (i, tok) in text.split(',').enumerate() {
        let tok = tok.trim();
        let value: i64 = tok.parse().map_err(|_| ConfigError::Parse(tok.to_string()))?;
        if value < 0 {
            return Err(ConfigError::Negative { site: i + 1, value });
        }
        sites.push(value as usize);
    }
    Configuration::new(sites)
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    c: Vec<usize>,
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConfigWire { c: self.sites.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = ConfigWire::deserialize(d)?;
        Configuration::new(wire.c).map_err(serde::de::Error::custom)
    }
}

/// Site counts with no constraint on the total: cores, windows, and the
/// transient `c ± {j}` values that appear inside inductions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubConfiguration {
    sites: Vec<usize>,
}

impl SubConfiguration {
    pub fn new(sites: Vec<usize>) -> Self {
        SubConfiguration { sites }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn balls(&self) -> usize {
        self.sites.iter().sum()
    }

    pub fn ball_order(&self) -> Vec<usize> {
        ball_order(&self.sites)
    }

    pub fn add_ball(mut self, j: usize) -> Result<Self, ConfigError> {
        self.check_site(j)?;
        self.sites[j - 1] += 1;
        Ok(self)
    }

    pub fn remove_ball(mut self, j: usize) -> Result<Self, ConfigError> {
        self.check_site(j)?;
        if self.sites[j - 1] == 0 {
            return Err(ConfigError::EmptySite(j));
        }
        self.sites[j - 1] -= 1;
        Ok(self)
    }

    pub fn into_configuration(self) -> Result<Configuration, ConfigError> {
        Configuration::new(self.sites)
    }

    fn check_site(&self, j: usize) -> Result<(), ConfigError> {
        if j == 0 || j > self.sites.len() {
            return Err(ConfigError::SiteOutOfRange { site: j, n: self.sites.len() });
        }
        Ok(())
    }
}

impl From<Configuration> for SubConfiguration {
    fn from(c: Configuration) -> Self {
        SubConfiguration { sites: c.sites }
    }
}

/// `c = (0^leading, gamma, 0^trailing)` with `gamma` starting and ending on
/// an occupied site.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoreDecomposition {
    pub leading: usize,
    pub gamma: Vec<usize>,
    pub trailing: usize,
}

impl CoreDecomposition {
    pub fn reassemble(&self) -> Vec<usize> {
        let mut v = vec![0; self.leading];
        v.extend_from_slice(&self.gamma);
        v.extend(std::iter::repeat_n(0, self.trailing));
        v
    }
}

/// A one-hole core `(alpha, 0, beta)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OneHoleShape {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl OneHoleShape {
    /// Both blocks must be nonempty and hole-free.
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self, ConfigError> {
        if alpha.is_empty() || beta.is_empty() || alpha.contains(&0) || beta.contains(&0) {
            return Err(ConfigError::NotOneHole);
        }
        Ok(OneHoleShape { alpha, beta })
    }

    /// Sites of `alpha`.
    pub fn ell(&self) -> usize {
        self.alpha.len()
    }

    /// Sites of `beta`.
    pub fn m(&self) -> usize {
        self.beta.len()
    }

    /// Balls of `alpha`.
    pub fn p(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// Balls of `beta`.
    pub fn r(&self) -> usize {
        self.beta.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.p() + self.r()
    }

    pub fn gamma(&self) -> Vec<usize> {
        let mut g = self.alpha.clone();
        g.push(0);
        g.extend_from_slice(&self.beta);
        g
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub is_lukasiewicz: bool,
    /// 1-based site of the unique negative height, if there is exactly one.
    pub almost_defect: Option<usize>,
    pub is_connected: bool,
    pub is_weakly_lukasiewicz: bool,
    pub is_one_hole: bool,
}

pub fn heights(sites: &[usize]) -> Vec<i64> {
    sites
        .iter()
        .scan(0i64, |h, &c| {
            *h += c as i64 - 1;
            Some(*h)
        })
        .collect()
}

pub fn ball_order(sites: &[usize]) -> Vec<usize> {
    sites
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect()
}

/// `u_j <= max(u_{j-1} + 1, j)` for every `j >= 2`.
pub fn is_weakly_lukasiewicz_order(order: &[usize]) -> bool {
    (1..order.len()).all(|i| order[i] <= (order[i - 1] + 1).max(i + 1))
}

pub fn validate_core(gamma: &[usize]) -> Result<(), ConfigError> {
    match (gamma.first(), gamma.last()) {
        (Some(&a), Some(&b)) if a > 0 && b > 0 => Ok(()),
        _ => Err(ConfigError::BadCore),
    }
}

/// Largest `k` such that `(0^k, gamma, 0^(n-m-k))` is weakly Lukasiewicz.
pub fn max_weakly_shift(gamma: &[usize], n: usize) -> Result<usize, ConfigError> {
    validate_core(gamma)?;
    if gamma.len() > n {
        return Err(ConfigError::ShiftOutOfRange { shift: 0, sites: gamma.len(), n });
    }
    (0..=n - gamma.len())
        .filter(|&k| {
            Configuration::from_core(k, gamma, n)
                .map(|c| c.classify().is_weakly_lukasiewicz)
                .unwrap_or(false)
        })
        .max()
        .ok_or(ConfigError::NoWeaklyShift)
}

pub fn one_hole_decompose(c: &Configuration) -> Result<OneHoleShape, ConfigError> {
    let gamma = c.core().gamma;
    let holes: Vec<usize> = (0..gamma.len()).filter(|&i| gamma[i] == 0).collect();
    match holes.as_slice() {
        [h] => OneHoleShape::new(gamma[..*h].to_vec(), gamma[h + 1..].to_vec()),
        _ => Err(ConfigError::NotOneHole),
    }
}

/// All configurations with `n` balls, in lexicographic order of their
/// site vectors.
pub fn configurations(n: usize) -> Configurations {
    let mut first = vec![0; n];
    if let Some(last) = first.last_mut() {
        *last = n;
    }
    Configurations {
        next: (n > 0).then_some(first),
    }
}

pub struct Configurations {
    next: Option<Vec<usize>>,
}

impl Iterator for Configurations {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let cur = self.next.take()?;
        let n = cur.len();
        let mut succ = cur.clone();
        let mut suffix = succ[n - 1];
        for i in (0..n - 1).rev() {
            if suffix > 0 {
                succ[i] += 1;
                for x in &mut succ[i + 1..] {
                    *x = 0;
                }
                succ[n - 1] = suffix - 1;
                self.next = Some(succ);
                break;
            }
            suffix += succ[i];
        }
        Some(Configuration { sites: cur })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(cfg("0,3,0,2,0").n(), 5);
        assert_eq!(cfg(" 1 ").n(), 1);
        assert_eq!(parse_config("2,0,0"), Err(ConfigError::BadSum { sum: 2, n: 3 }));
        assert_eq!(parse_config("2,-1,2"), Err(ConfigError::Negative { site: 2, value: -1 }));
        assert_eq!(parse_config(""), Err(ConfigError::Empty));
        assert!(matches!(parse_config("1,x"), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn heights_examples() {
        assert_eq!(cfg("3,0,0,2,0").heights(), vec![2, 1, 0, 1, 0]);
        assert_eq!(cfg("1,1,1").heights(), vec![0, 0, 0]);
        assert_eq!(cfg("0,3,0,2,0").heights(), vec![-1, 1, 0, 1, 0]);
    }

    #[test]
    fn orders() {
        assert_eq!(cfg("0,3,0,2,0").left_to_right_order(), vec![2, 2, 2, 4, 4]);
        assert_eq!(cfg("1,1,1").left_to_right_order(), vec![1, 2, 3]);
        assert_eq!(cfg("3,0,0").left_to_right_order(), vec![1, 1, 1]);
    }

    #[test]
    fn core_reverse_and_balls() {
        let c = cfg("0,0,4,0,1,2,0");
        let core = c.core();
        assert_eq!(core.leading, 2);
        assert_eq!(core.gamma, vec![4, 0, 1, 2]);
        assert_eq!(core.trailing, 1);
        assert_eq!(core.reassemble(), c.sites());
        assert_eq!(cfg("0,3,0,2,0").reverse(), cfg("0,2,0,3,0"));
        assert_eq!(cfg("0,3,0,2,0").remove_ball(3), Err(ConfigError::EmptySite(3)));
        let d = cfg("0,3,0,2,0").remove_ball(4).unwrap();
        assert_eq!(d.sites(), &[0, 3, 0, 1, 0]);
        let loaded = cfg("1,1").add_ball(1).unwrap();
        assert_eq!(loaded.balls(), 3);
        assert!(loaded.into_configuration().is_err());
        assert!(matches!(cfg("1").add_ball(2), Err(ConfigError::SiteOutOfRange { .. })));
    }

    #[test]
    fn classification_examples() {
        assert!(cfg("3,0,0,2,0").classify().is_lukasiewicz);
        assert_eq!(cfg("1,0,3,0,1").classify().almost_defect, Some(2));
        let w = cfg("0,3,0,2,0").classify();
        assert!(w.is_weakly_lukasiewicz && !w.is_connected && !w.is_lukasiewicz);
        let one = cfg("1").classify();
        assert!(one.is_lukasiewicz && one.is_connected && one.is_weakly_lukasiewicz);
        assert!(!one.is_one_hole);
        assert!(cfg("0,1,2,2,0").classify().is_connected);
        assert!(cfg("0,2,1,0,3,0").classify().is_one_hole);
    }

    #[test]
    fn weakly_shift_examples() {
        assert_eq!(max_weakly_shift(&[3, 0, 2], 5), Ok(1));
        for n in 1..=7 {
            assert_eq!(max_weakly_shift(&[n], n), Ok(n - 1));
        }
        assert_eq!(max_weakly_shift(&[1, 2, 2], 5), Ok(2));
        assert_eq!(max_weakly_shift(&[0, 2], 2), Err(ConfigError::BadCore));
    }

    #[test]
    fn no_weakly_shift_when_unshifted_fails() {
        // (1,0,0,3,0,0,3) has u_2 = 4 > max(2, 2).
        assert_eq!(max_weakly_shift(&[1, 0, 0, 3, 0, 0, 3], 7), Err(ConfigError::NoWeaklyShift));
    }

    #[test]
    fn one_hole_examples() {
        let shape = one_hole_decompose(&cfg("0,2,1,0,3,0")).unwrap();
        assert_eq!(shape.alpha, vec![2, 1]);
        assert_eq!(shape.beta, vec![3]);
        assert_eq!((shape.ell(), shape.m(), shape.p(), shape.r()), (2, 1, 3, 3));
        assert_eq!(one_hole_decompose(&cfg("1,1")), Err(ConfigError::NotOneHole));
        assert_eq!(one_hole_decompose(&cfg("3,0,0,3,0,0")), Err(ConfigError::NotOneHole));
    }

    #[test]
    fn enumeration_order_and_count() {
        let all: Vec<_> = configurations(3).map(|c| c.sites().to_vec()).collect();
        assert_eq!(all.first().unwrap(), &vec![0, 0, 3]);
        assert_eq!(all.last().unwrap(), &vec![3, 0, 0]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let counts: Vec<usize> = (1..=8).map(|n| configurations(n).count()).collect();
        assert_eq!(counts, vec![1, 3, 10, 35, 126, 462, 1716, 6435]);
        assert_eq!(configurations(0).count(), 0);
    }

    #[test]
    fn json_wire_format() {
        let c = cfg("0,3,0,2,0");
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"c":[0,3,0,2,0]}"#);
        assert!(serde_json::from_str::<Configuration>(r#"{"c":[1,2]}"#).is_err());
    }

    /// Structural facts checked over every configuration up to eight balls.
    #[test]
    fn exhaustive_structure() {
        for n in 1..=8 {
            for c in configurations(n) {
                let h = c.heights();
                assert_eq!(h[n - 1], 0);
                assert_eq!(c.reverse().reverse(), c);

                let f = c.classify();
                let u = c.left_to_right_order();
                assert!(!f.is_lukasiewicz || f.is_weakly_lukasiewicz, "{c}");
                assert!(!f.is_connected || f.is_weakly_lukasiewicz, "{c}");
                assert_eq!(f.is_lukasiewicz, (0..n).all(|i| u[i] <= i + 1), "{c}");
                assert_eq!(f.is_connected, (1..n).all(|i| u[i] <= u[i - 1] + 1), "{c}");

                if f.is_weakly_lukasiewicz {
                    let core = c.core();
                    let last = core.leading + core.gamma.len();
                    let d = c.remove_ball(last).unwrap();
                    assert!(is_weakly_lukasiewicz_order(&d.ball_order()), "{c}");
                    for i in 0..=core.leading {
                        let shifted = Configuration::from_core(i, &core.gamma, n).unwrap();
                        assert!(shifted.classify().is_weakly_lukasiewicz, "{c} -> shift {i}");
                    }
                }

                if f.is_one_hole {
                    assert!(f.is_weakly_lukasiewicz || c.reverse().classify().is_weakly_lukasiewicz, "{c}");
                }
            }
        }
    }
}
