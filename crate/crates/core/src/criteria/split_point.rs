use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of boundary values taken from each class by
/// [`SplitStrategy::ClosestMeans`].
pub const DEFAULT_WINDOW: usize = 5;

/// How the threshold is placed once the split feature is known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    /// Midpoint between the mean of the `h` largest values of the low class
    /// and the mean of the `h` smallest values of the high class.
    #[default]
    ClosestMeans,
    /// Median of all node values.
    Median,
    /// Mean of all node values.
    Mean,
}

impl SplitStrategy {
    pub const ALL: [SplitStrategy; 3] = [SplitStrategy::ClosestMeans, SplitStrategy::Median, SplitStrategy::Mean];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitStrategy::ClosestMeans => "closest_means",
            SplitStrategy::Median => "median",
            SplitStrategy::Mean => "mean",
        }
    }
}

impl fmt::Display for SplitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closest_means" | "closest" => Ok(SplitStrategy::ClosestMeans),
            "median" => Ok(SplitStrategy::Median),
            "mean" => Ok(SplitStrategy::Mean),
            other => Err(Error::Config(format!("unknown split strategy {other:?}"))),
        }
    }
}

fn sorted_sum(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    values.iter().sum()
}

fn mean_of(values: &[f64]) -> f64 {
    sorted_sum(&mut values.to_vec()) / values.len() as f64
}

/// Mean of the `min(h, len)` largest (or smallest) values.
fn extreme_mean(values: &[f64], h: usize, largest: bool) -> f64 {
    let k = h.min(values.len());
    let mut v = values.to_vec();
    if k < v.len() {
        if largest {
            let pivot = v.len() - k;
            v.select_nth_unstable_by(pivot, f64::total_cmp);
            v.drain(..pivot);
        } else {
            v.select_nth_unstable_by(k - 1, f64::total_cmp);
            v.truncate(k);
        }
    }
    sorted_sum(&mut v) / k as f64
}

/// Threshold for one feature given its values in each class.
///
/// Inputs need not be sorted. `h` is the per-class window of
/// [`SplitStrategy::ClosestMeans`] and is ignored by the other strategies.
pub fn split_point(values_pos: &[f64], values_neg: &[f64], strategy: SplitStrategy, h: usize) -> Result<f64> {
    if h == 0 {
        return Err(Error::Config("split window must be at least 1".into()));
    }
    match strategy {
        SplitStrategy::ClosestMeans => {
            if values_pos.is_empty() || values_neg.is_empty() {
                return Err(Error::Contract("closest-means split needs values from both classes".into()));
            }
            let (low, high) =
                if mean_of(values_pos) <= mean_of(values_neg) { (values_pos, values_neg) } else { (values_neg, values_pos) };
            let b1 = extreme_mean(low, h, true);
            let b2 = extreme_mean(high, h, false);
            Ok((b1 + b2) / 2.0)
        }
        SplitStrategy::Median | SplitStrategy::Mean => {
            let mut all: Vec<f64> = values_pos.iter().chain(values_neg).copied().collect();
            if all.is_empty() {
                return Err(Error::Contract("no values to place a threshold on".into()));
            }
            if strategy == SplitStrategy::Mean {
                let n = all.len() as f64;
                return Ok(sorted_sum(&mut all) / n);
            }
            all.sort_unstable_by(f64::total_cmp);
            let m = all.len() / 2;
            Ok(if all.len() % 2 == 1 { all[m] } else { (all[m - 1] + all[m]) / 2.0 })
        }
    }
}
