//! Closed-form feature weights from geometric mean metric learning with the
//! metric restricted to a diagonal.
//!
//! For a diagonal metric `A = diag(w)` the objective
//! `tr(A·S_w) + tr(A⁻¹·S_b)` separates into one term per feature,
//!
//! ```text
//! f(w_j) = w_j · within_j + between_j / w_j
//! ```
//!
//! where `within_j` is the summed squared deviation of feature `j` from its
//! class mean and `between_j = (m_pos,j − m_neg,j)²`. Each term is strictly
//! convex on `w_j > 0` with minimiser `w_j = √(between_j / within_j)`, so the
//! whole ranking comes out of one pass over the node.

use std::cmp::Ordering;

use serde::Serialize;

use crate::dataset::{Label, NodeView};
use crate::error::{Error, Result};

/// Stand-in weight for a feature whose classes are each constant but apart:
/// a perfect separator. Larger than every finite closed-form weight.
pub const W_MAX: f64 = f64::MAX;

/// Class means and scatter of one candidate feature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeatureScatter {
    pub feature: usize,
    pub mean_pos: f64,
    pub mean_neg: f64,
    pub within_scatter: f64,
    pub between_scatter: f64,
}

impl FeatureScatter {
    /// Optimal weight for this feature, with degenerate denominators resolved:
    /// zero within-class scatter gives [`W_MAX`] if the means differ and `0`
    /// if the feature is constant over the node.
    pub fn weight(&self) -> f64 {
        if self.within_scatter > 0.0 {
            (self.between_scatter / self.within_scatter).sqrt()
        } else if self.between_scatter > 0.0 {
            W_MAX
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterStats {
    pub features: Vec<FeatureScatter>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureWeights {
    pub weights: Vec<f64>,
    pub candidate_indices: Vec<usize>,
    /// Between-class scatter per candidate; orders tied [`W_MAX`] sentinels.
    pub between_scatter: Vec<f64>,
}

impl FeatureWeights {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of an original feature index, if it was a candidate.
    pub fn weight_of(&self, feature: usize) -> Option<f64> {
        self.candidate_indices.iter().position(|&f| f == feature).map(|p| self.weights[p])
    }

    fn cmp_positions(&self, a: usize, b: usize) -> Ordering {
        let (wa, wb) = (self.weights[a], self.weights[b]);
        wb.total_cmp(&wa)
            .then_with(|| {
                if wa == W_MAX {
                    self.between_scatter[b].total_cmp(&self.between_scatter[a])
                } else {
                    Ordering::Equal
                }
            })
            .then_with(|| self.candidate_indices[a].cmp(&self.candidate_indices[b]))
    }

    /// Candidate positions from best to worst: descending weight, sentinels
    /// ordered by between-class scatter, then ascending feature index.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.weights.len()).collect();
        order.sort_by(|&a, &b| self.cmp_positions(a, b));
        order
    }
}

/// Class means, within- and between-class scatter for every candidate.
pub fn scatter_stats(node: &NodeView<'_>, candidates: &[usize]) -> Result<ScatterStats> {
    let counts = node.class_counts();
    if counts.is_pure() {
        return Err(Error::SingleClass);
    }
    let ds = node.dataset();
    let (n_pos, n_neg) = (counts.pos as f64, counts.neg as f64);
    let features = candidates
        .iter()
        .map(|&j| {
            let col = ds.column(j);
            let (mut sum_pos, mut sum_neg) = (0.0, 0.0);
            for &i in node.indices() {
                match ds.label(i) {
                    Label::Positive => sum_pos += col[i],
                    Label::Negative => sum_neg += col[i],
                }
            }
            let (mean_pos, mean_neg) = (sum_pos / n_pos, sum_neg / n_neg);
            let mut within = 0.0;
            for &i in node.indices() {
                let m = if ds.label(i) == Label::Positive { mean_pos } else { mean_neg };
                let dev = col[i] - m;
                within += dev * dev;
            }
            let diff = mean_pos - mean_neg;
            FeatureScatter { feature: j, mean_pos, mean_neg, within_scatter: within, between_scatter: diff * diff }
        })
        .collect();
    Ok(ScatterStats { features })
}

/// Closed-form importance weight of every candidate feature at a node.
pub fn gmml_weights(node: &NodeView<'_>, candidates: &[usize]) -> Result<(FeatureWeights, ScatterStats)> {
    if candidates.is_empty() {
        return Err(Error::Contract("no candidate features".into()));
    }
    if let Some(&j) = candidates.iter().find(|&&j| j >= node.dataset().n_features()) {
        return Err(Error::Contract(format!("candidate feature {j} out of range")));
    }
    let stats = scatter_stats(node, candidates)?;
    let weights = FeatureWeights {
        weights: stats.features.iter().map(FeatureScatter::weight).collect(),
        candidate_indices: candidates.to_vec(),
        between_scatter: stats.features.iter().map(|s| s.between_scatter).collect(),
    };
    Ok((weights, stats))
}

/// Original index of the highest-weighted candidate.
pub fn best_weighted_feature(w: &FeatureWeights) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::Contract("empty weight vector".into()));
    }
    let best = (1..w.len()).fold(0, |best, p| if w.cmp_positions(p, best) == Ordering::Less { p } else { best });
    Ok(w.candidate_indices[best])
}

/// Per-feature objective `w·within + between/w`.
pub fn gmml_objective(within: f64, between: f64, w: f64) -> f64 {
    w * within + between / w
}

/// Derivative of [`gmml_objective`] with respect to `w`.
pub fn gmml_derivative(within: f64, between: f64, w: f64) -> f64 {
    within - between / (w * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Dataset;

    fn one_feature(pos: &[f64], neg: &[f64]) -> Dataset {
        let rows: Vec<Vec<f64>> = pos.iter().chain(neg).map(|&v| vec![v]).collect();
        let labels = pos.iter().map(|_| Label::Positive).chain(neg.iter().map(|_| Label::Negative)).collect();
        Dataset::from_rows_unnamed("f", &rows, labels).unwrap()
    }

    #[test]
    fn closed_form_example() {
        let ds = one_feature(&[0.0, 2.0], &[4.0, 6.0]);
        let (w, stats) = gmml_weights(&ds.view(), &[0]).unwrap();
        let s = stats.features[0];
        assert_eq!((s.mean_pos, s.mean_neg, s.within_scatter, s.between_scatter), (1.0, 5.0, 4.0, 16.0));
        assert_eq!(w.weights, vec![2.0]);
        // numeric minimisation of the objective lands on the same point
        let (mut lo, mut hi) = (1e-6, 1e3);
        for _ in 0..200 {
            let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
            if gmml_objective(4.0, 16.0, a) < gmml_objective(4.0, 16.0, b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        assert!((lo - 2.0).abs() < 1e-6);
        assert_eq!(gmml_derivative(4.0, 16.0, 2.0), 0.0);
    }

    #[test]
    fn coincident_means_give_zero_weight() {
        let ds = one_feature(&[1.0, 3.0], &[0.0, 4.0]);
        let (w, _) = gmml_weights(&ds.view(), &[0]).unwrap();
        assert_eq!(w.weights, vec![0.0]);
    }

    #[test]
    fn zero_within_scatter_is_sentinel() {
        let ds = one_feature(&[0.0, 0.0], &[1.0, 1.0]);
        let (w, _) = gmml_weights(&ds.view(), &[0]).unwrap();
        assert_eq!(w.weights, vec![W_MAX]);
        let ds = one_feature(&[3.0, 3.0], &[3.0]);
        let (w, _) = gmml_weights(&ds.view(), &[0]).unwrap();
        assert_eq!(w.weights, vec![0.0]);
    }

    #[test]
    fn pure_node_is_an_error() {
        let ds = one_feature(&[1.0, 2.0], &[]);
        assert!(matches!(gmml_weights(&ds.view(), &[0]), Err(Error::SingleClass)));
    }

    fn weights(weights: Vec<f64>, candidates: Vec<usize>, between: Vec<f64>) -> FeatureWeights {
        FeatureWeights { weights, candidate_indices: candidates, between_scatter: between }
    }

    #[test]
    fn argmax_and_ties() {
        let w = weights(vec![0.5, 2.0, 1.0], vec![3, 7, 9], vec![1.0; 3]);
        assert_eq!(best_weighted_feature(&w).unwrap(), 7);
        let w = weights(vec![1.0, 1.0, 1.0], vec![9, 2, 5], vec![1.0; 3]);
        assert_eq!(best_weighted_feature(&w).unwrap(), 2);
        let w = weights(vec![1e300, W_MAX, 3.0], vec![0, 1, 2], vec![1.0; 3]);
        assert_eq!(best_weighted_feature(&w).unwrap(), 1);
        let w = weights(vec![W_MAX, W_MAX, W_MAX], vec![0, 1, 2], vec![1.0, 4.0, 4.0]);
        assert_eq!(best_weighted_feature(&w).unwrap(), 1);
        assert_eq!(w.ranking(), vec![1, 2, 0]);
        assert!(best_weighted_feature(&weights(vec![], vec![], vec![])).is_err());
    }
}
