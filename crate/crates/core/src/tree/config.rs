use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::criteria::{SplitCriterion, SplitStrategy, DEFAULT_WINDOW};
use crate::dataset::sqrt_mtry;
use crate::error::{Error, Result};

/// How a tree chooses the feature and threshold at each internal node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Highest closed-form GMML weight, threshold from a [`SplitStrategy`].
    #[default]
    Dgmml,
    InfoGain,
    GainRatio,
    Gini,
    Ihd,
}

impl Criterion {
    pub const ALL: [Criterion; 5] =
        [Criterion::Dgmml, Criterion::InfoGain, Criterion::GainRatio, Criterion::Gini, Criterion::Ihd];

    /// The exhaustive-search objective, or `None` for the closed-form rule.
    pub fn exhaustive(self) -> Option<SplitCriterion> {
        match self {
            Criterion::Dgmml => None,
            Criterion::InfoGain => Some(SplitCriterion::InfoGain),
            Criterion::GainRatio => Some(SplitCriterion::GainRatio),
            Criterion::Gini => Some(SplitCriterion::GiniReduction),
            Criterion::Ihd => Some(SplitCriterion::Ihd),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Dgmml => "dgmml",
            Criterion::InfoGain => "info_gain",
            Criterion::GainRatio => "gain_ratio",
            Criterion::Gini => "gini",
            Criterion::Ihd => "ihd",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dgmml" => Ok(Criterion::Dgmml),
            "info_gain" | "ig" | "id3" => Ok(Criterion::InfoGain),
            "gain_ratio" | "c45" | "c4.5" => Ok(Criterion::GainRatio),
            "gini" | "cart" => Ok(Criterion::Gini),
            "ihd" => Ok(Criterion::Ihd),
            other => Err(Error::Config(format!("unknown criterion {other:?}"))),
        }
    }
}

/// Number of candidate features drawn at each node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mtry {
    #[default]
    All,
    /// `⌈√d⌉`
    Sqrt,
    Count(usize),
}

impl Mtry {
    pub fn resolve(self, d: usize) -> Result<usize> {
        let m = match self {
            Mtry::All => d,
            Mtry::Sqrt => sqrt_mtry(d),
            Mtry::Count(m) => m,
        };
        if m < 1 || m > d {
            return Err(Error::Config(format!("mtry must lie in [1, {d}], got {m}")));
        }
        Ok(m)
    }
}

impl fmt::Display for Mtry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mtry::All => f.write_str("all"),
            Mtry::Sqrt => f.write_str("sqrt"),
            Mtry::Count(m) => write!(f, "{m}"),
        }
    }
}

impl FromStr for Mtry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Mtry::All),
            "sqrt" => Ok(Mtry::Sqrt),
            n => n
                .parse()
                .map(Mtry::Count)
                .map_err(|_| Error::Config(format!("mtry must be a count, \"all\" or \"sqrt\", got {n:?}"))),
        }
    }
}

impl Serialize for Mtry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mtry::Count(m) => s.serialize_u64(*m as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Mtry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(m) => Ok(Mtry::Count(m)),
            Raw::Name(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub criterion: Criterion,
    /// Split on a GMML-weighted projection of the candidates; dGMML only.
    pub oblique: bool,
    pub mtry: Mtry,
    pub minleaf: usize,
    pub split_strategy: SplitStrategy,
    /// Per-class window of the closest-means threshold.
    pub window: usize,
    pub max_depth: Option<usize>,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            criterion: Criterion::Dgmml,
            oblique: false,
            mtry: Mtry::All,
            minleaf: 1,
            split_strategy: SplitStrategy::ClosestMeans,
            window: DEFAULT_WINDOW,
            max_depth: None,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn new(criterion: Criterion) -> Self {
        TrainConfig { criterion, ..Default::default() }
    }

    pub fn oblique(mut self, oblique: bool) -> Self {
        self.oblique = oblique;
        self
    }

    pub fn mtry(mut self, mtry: Mtry) -> Self {
        self.mtry = mtry;
        self
    }

    pub fn minleaf(mut self, minleaf: usize) -> Self {
        self.minleaf = minleaf;
        self
    }

    pub fn split_strategy(mut self, strategy: SplitStrategy) -> Self {
        self.split_strategy = strategy;
        self
    }

    pub fn window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn max_depth(mut self, max_depth: Option<usize>) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checks the config against a feature count and returns the resolved mtry.
    pub fn validate(&self, d: usize) -> Result<usize> {
        if self.oblique && self.criterion != Criterion::Dgmml {
            return Err(Error::Config(format!("oblique splits need the dgmml criterion, not {}", self.criterion)));
        }
        if self.minleaf < 1 {
            return Err(Error::Config("minleaf must be at least 1".into()));
        }
        if self.window < 1 {
            return Err(Error::Config("split window must be at least 1".into()));
        }
        self.mtry.resolve(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mtry_resolution() {
        assert_eq!(Mtry::All.resolve(7).unwrap(), 7);
        assert_eq!(Mtry::Sqrt.resolve(45).unwrap(), 7);
        assert_eq!(Mtry::Count(3).resolve(7).unwrap(), 3);
        assert!(Mtry::Count(8).resolve(7).is_err());
        assert!(Mtry::Count(0).resolve(7).is_err());
    }

    #[test]
    fn oblique_requires_dgmml() {
        assert!(TrainConfig::new(Criterion::Gini).oblique(true).validate(3).is_err());
        assert!(TrainConfig::new(Criterion::Dgmml).oblique(true).validate(3).is_ok());
        assert!(TrainConfig::default().minleaf(0).validate(3).is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = TrainConfig::new(Criterion::Ihd).mtry(Mtry::Count(4)).max_depth(Some(6)).seed(9);
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"mtry\":4"));
        assert_eq!(serde_json::from_str::<TrainConfig>(&text).unwrap(), cfg);
        let sqrt = TrainConfig::default().mtry(Mtry::Sqrt);
        assert_eq!(serde_json::from_str::<TrainConfig>(&serde_json::to_string(&sqrt).unwrap()).unwrap(), sqrt);
    }

    #[test]
    fn names_parse() {
        for c in Criterion::ALL {
            assert_eq!(c.as_str().parse::<Criterion>().unwrap(), c);
        }
        assert_eq!("cart".parse::<Criterion>().unwrap(), Criterion::Gini);
        assert!("twoing".parse::<Criterion>().is_err());
    }
}
