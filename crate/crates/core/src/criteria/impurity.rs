use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};

/// Per-class sample counts of a node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassCounts {
    pub pos: usize,
    pub neg: usize,
}

impl ClassCounts {
    pub const fn new(pos: usize, neg: usize) -> Self {
        ClassCounts { pos, neg }
    }

    pub fn from_labels(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut c = ClassCounts::default();
        for l in labels {
            c.add(l);
        }
        c
    }

    #[inline]
    pub fn add(&mut self, label: Label) {
        match label {
            Label::Positive => self.pos += 1,
            Label::Negative => self.neg += 1,
        }
    }

    #[inline]
    pub fn total(&self) -> usize {
        self.pos + self.neg
    }

    pub fn is_pure(&self) -> bool {
        self.pos == 0 || self.neg == 0
    }

    /// Majority class; ties go to the negative class.
    pub fn majority(&self) -> Label {
        if self.pos > self.neg {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// Class distribution as `[p_pos, p_neg]`.
    pub fn proportions(&self) -> [f64; 2] {
        let n = self.total() as f64;
        [self.pos as f64 / n, self.neg as f64 / n]
    }

    fn checked_sub(&self, other: &ClassCounts) -> Option<ClassCounts> {
        Some(ClassCounts { pos: self.pos.checked_sub(other.pos)?, neg: self.neg.checked_sub(other.neg)? })
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits.
pub fn entropy(c: ClassCounts) -> f64 {
    let [p, q] = c.proportions();
    -(plogp(p) + plogp(q))
}

pub fn gini(c: ClassCounts) -> f64 {
    let [p, q] = c.proportions();
    1.0 - (p * p + q * q)
}

pub fn misclassification_error(c: ClassCounts) -> f64 {
    let [p, q] = c.proportions();
    1.0 - p.max(q)
}

/// Squared Hellinger distance between two class distributions.
pub fn hellinger_sq(child: [f64; 2], parent: [f64; 2]) -> Result<f64> {
    for dist in [&child, &parent] {
        let sum = dist[0] + dist[1];
        if dist.iter().any(|&p| p.is_nan() || p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Contract(format!("{dist:?} is not a probability vector")));
        }
    }
    Ok(hellinger_sq_unchecked(child, parent))
}

#[inline]
fn hellinger_sq_unchecked(child: [f64; 2], parent: [f64; 2]) -> f64 {
    let bc = (child[0] * parent[0]).sqrt() + (child[1] * parent[1]).sqrt();
    (1.0 - bc).max(0.0)
}

fn check_counts(parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> Result<()> {
    if parent.total() == 0 {
        return Err(Error::Contract("parent node is empty".into()));
    }
    if parent.checked_sub(&left) != Some(right) {
        return Err(Error::Contract(format!(
            "children {left:?} + {right:?} do not add up to parent {parent:?}"
        )));
    }
    Ok(())
}

/// `impurity(parent) - Σ n_s/n · impurity(s)`, clamped at zero.
#[inline]
fn weighted_reduction(parent: ClassCounts, left: ClassCounts, right: ClassCounts, f: fn(ClassCounts) -> f64) -> f64 {
    let n = parent.total() as f64;
    let mut r = f(parent);
    for child in [left, right] {
        if child.total() > 0 {
            r -= child.total() as f64 / n * f(child);
        }
    }
    r.max(0.0)
}

pub fn info_gain(parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> Result<f64> {
    check_counts(parent, left, right)?;
    Ok(SplitCriterion::InfoGain.score(parent, left, right))
}

/// Information gain divided by the split information of the two children.
pub fn gain_ratio(parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> Result<f64> {
    check_counts(parent, left, right)?;
    if left.total() == 0 || right.total() == 0 {
        return Err(Error::Contract("gain ratio needs two non-empty children".into()));
    }
    Ok(SplitCriterion::GainRatio.score(parent, left, right))
}

pub fn gini_reduction(parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> Result<f64> {
    check_counts(parent, left, right)?;
    Ok(SplitCriterion::GiniReduction.score(parent, left, right))
}

/// Inter-node Hellinger distance: size-weighted squared Hellinger distance
/// from each child's class distribution to the parent's.
pub fn ihd(parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> Result<f64> {
    check_counts(parent, left, right)?;
    Ok(SplitCriterion::Ihd.score(parent, left, right))
}

/// Split objectives maximised by the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCriterion {
    InfoGain,
    GainRatio,
    GiniReduction,
    Ihd,
}

impl SplitCriterion {
    pub const ALL: [SplitCriterion; 4] =
        [SplitCriterion::InfoGain, SplitCriterion::GainRatio, SplitCriterion::GiniReduction, SplitCriterion::Ihd];

    /// Score without consistency checks. Children must sum to the parent.
    #[inline]
    pub fn score(self, parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> f64 {
        match self {
            SplitCriterion::InfoGain => weighted_reduction(parent, left, right, entropy),
            SplitCriterion::GiniReduction => weighted_reduction(parent, left, right, gini),
            SplitCriterion::GainRatio => {
                let n = parent.total() as f64;
                let split_info = -(plogp(left.total() as f64 / n) + plogp(right.total() as f64 / n));
                if split_info > 0.0 {
                    weighted_reduction(parent, left, right, entropy) / split_info
                } else {
                    0.0
                }
            }
            SplitCriterion::Ihd => {
                let n = parent.total() as f64;
                let pt = parent.proportions();
                let mut s = 0.0;
                for child in [left, right] {
                    if child.total() > 0 {
                        s += child.total() as f64 / n * hellinger_sq_unchecked(child.proportions(), pt);
                    }
                }
                s
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitCriterion::InfoGain => "info_gain",
            SplitCriterion::GainRatio => "gain_ratio",
            SplitCriterion::GiniReduction => "gini_reduction",
            SplitCriterion::Ihd => "ihd",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn cc(pos: usize, neg: usize) -> ClassCounts {
        ClassCounts::new(pos, neg)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(cc(5, 5)), 1.0);
        assert_eq!(entropy(cc(10, 0)), 0.0);
        let expected = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert!(close(entropy(cc(3, 1)), expected));
        assert!(close(entropy(cc(3, 1)), 0.811_278_124_459_132_9));
    }

    #[test]
    fn info_gain_values() {
        assert_eq!(info_gain(cc(5, 5), cc(5, 0), cc(0, 5)).unwrap(), 1.0);
        assert_eq!(info_gain(cc(5, 5), cc(3, 3), cc(2, 2)).unwrap(), 0.0);
        assert!(close(info_gain(cc(4, 4), cc(3, 1), cc(1, 3)).unwrap(), 1.0 - 0.811_278_124_459_132_9));
    }

    #[test]
    fn gain_ratio_values() {
        assert_eq!(gain_ratio(cc(5, 5), cc(5, 0), cc(0, 5)).unwrap(), 1.0);
        assert_eq!(gain_ratio(cc(5, 5), cc(3, 3), cc(2, 2)).unwrap(), 0.0);
        assert!(close(gain_ratio(cc(4, 4), cc(3, 1), cc(1, 3)).unwrap(), 0.188_721_875_540_867_1));
        assert!(gain_ratio(cc(5, 5), cc(5, 5), cc(0, 0)).is_err());
    }

    #[test]
    fn gini_values() {
        assert_eq!(gini(cc(5, 5)), 0.5);
        assert_eq!(gini(cc(7, 0)), 0.0);
        assert_eq!(gini(cc(3, 1)), 0.375);
        assert_eq!(gini_reduction(cc(5, 5), cc(5, 0), cc(0, 5)).unwrap(), 0.5);
        assert_eq!(gini_reduction(cc(5, 5), cc(3, 3), cc(2, 2)).unwrap(), 0.0);
        assert_eq!(gini_reduction(cc(4, 4), cc(3, 1), cc(1, 3)).unwrap(), 0.125);
    }

    #[test]
    fn misclassification_values() {
        assert_eq!(misclassification_error(cc(5, 5)), 0.5);
        assert_eq!(misclassification_error(cc(9, 0)), 0.0);
        assert_eq!(misclassification_error(cc(3, 1)), 0.25);
    }

    #[test]
    fn hellinger_values() {
        assert_eq!(hellinger_sq([0.3, 0.7], [0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(hellinger_sq([1.0, 0.0], [0.0, 1.0]).unwrap(), 1.0);
        let expected = 1.0 - (0.375f64.sqrt() + 0.125f64.sqrt());
        assert!(close(hellinger_sq([0.75, 0.25], [0.5, 0.5]).unwrap(), expected));
        assert!(close(expected, 0.034_074_173_710_931_7));
        assert!(hellinger_sq([0.5, 0.6], [0.5, 0.5]).is_err());
        assert!(hellinger_sq([-0.1, 1.1], [0.5, 0.5]).is_err());
    }

    #[test]
    fn ihd_values() {
        assert_eq!(ihd(cc(6, 4), cc(3, 2), cc(3, 2)).unwrap(), 0.0);
        assert!(close(ihd(cc(5, 5), cc(5, 0), cc(0, 5)).unwrap(), 1.0 - 0.5f64.sqrt()));
        assert!(close(ihd(cc(4, 4), cc(3, 1), cc(1, 3)).unwrap(), 0.034_074_173_710_931_7));
    }

    #[test]
    fn inconsistent_counts_are_rejected() {
        assert!(matches!(info_gain(cc(5, 5), cc(3, 3), cc(3, 3)), Err(Error::Contract(_))));
        assert!(matches!(gini_reduction(cc(5, 5), cc(6, 0), cc(0, 5)), Err(Error::Contract(_))));
        assert!(matches!(ihd(cc(5, 5), cc(1, 1), cc(1, 1)), Err(Error::Contract(_))));
    }

    #[test]
    fn majority_ties_go_negative() {
        assert_eq!(cc(2, 2).majority(), Label::Negative);
        assert_eq!(cc(3, 2).majority(), Label::Positive);
    }
}
