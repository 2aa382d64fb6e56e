use serde::{Deserialize, Serialize};

use super::report::{Cell, Table};
use crate::criteria::{gini, gmml_weights, split_point, ClassCounts, SplitStrategy};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightImpurityRow {
    /// 1-based position in descending weight order.
    pub rank: usize,
    pub feature: usize,
    pub name: String,
    pub weight: f64,
    pub threshold: f64,
    /// Size-weighted Gini of the two sides after splitting the whole
    /// dataset on this feature alone.
    pub post_split_impurity: f64,
}

/// Ranks every feature by its closed-form weight over the full dataset and
/// records the impurity left by splitting on each one.
pub fn weight_vs_impurity(ds: &Dataset, strategy: SplitStrategy, window: usize) -> Result<Vec<WeightImpurityRow>> {
    if ds.class_counts().is_pure() {
        return Err(Error::SingleClass);
    }
    let view = ds.view();
    let all: Vec<usize> = (0..ds.n_features()).collect();
    let (weights, _) = gmml_weights(&view, &all)?;
    let mut rows = Vec::with_capacity(all.len());
    for (rank, pos) in weights.ranking().into_iter().enumerate() {
        let feature = weights.candidate_indices[pos];
        let (p, n) = view.class_values(feature);
        let threshold = split_point(&p, &n, strategy, window)?;
        let (mut left, mut right) = (ClassCounts::default(), ClassCounts::default());
        for (&x, &label) in ds.column(feature).iter().zip(ds.labels()) {
            if x <= threshold { left.add(label) } else { right.add(label) }
        }
        rows.push(WeightImpurityRow {
            rank: rank + 1,
            feature,
            name: ds.feature_names()[feature].clone(),
            weight: weights.weights[pos],
            threshold,
            post_split_impurity: weighted_gini(left, right),
        });
    }
    Ok(rows)
}

fn weighted_gini(left: ClassCounts, right: ClassCounts) -> f64 {
    let n = (left.total() + right.total()) as f64;
    let part = |c: ClassCounts| if c.total() == 0 { 0.0 } else { c.total() as f64 / n * gini(c) };
    part(left) + part(right)
}

pub fn weights_table(ds: &Dataset, rows: &[WeightImpurityRow], strategy: SplitStrategy) -> Table {
    let mut t = Table::new(&["dataset", "rank", "feature", "name", "weight", "threshold", "post_split_impurity"])
        .meta("report", "weight_vs_impurity")
        .meta("impurity", "gini (size-weighted over both sides)")
        .meta("strategy", strategy.as_str())
        .meta("parent_gini", format!("{:.16e}", gini(ds.class_counts())));
    for r in rows {
        t.push(vec![
            ds.name().into(),
            r.rank.into(),
            r.feature.into(),
            r.name.as_str().into(),
            Cell::Exact(r.weight),
            Cell::Exact(r.threshold),
            Cell::Exact(r.post_split_impurity),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Label;

    fn ds(rows: Vec<Vec<f64>>, labels: &[i8]) -> Dataset {
        Dataset::from_rows_unnamed("w", &rows, labels.iter().map(|&l| Label::from_i8(l).unwrap()).collect()).unwrap()
    }

    #[test]
    fn perfect_feature_ranks_first_with_zero_impurity() {
        let rows = vec![vec![3.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 8.0], vec![4.0, 9.0], vec![1.0, 10.0]];
        let d = ds(rows, &[1, 1, 1, -1, -1, -1]);
        let out = weight_vs_impurity(&d, SplitStrategy::ClosestMeans, 5).unwrap();
        assert_eq!((out[0].rank, out[0].feature), (1, 1));
        assert_eq!(out[0].post_split_impurity, 0.0);
        assert!(out[0].weight >= out[1].weight);
    }

    #[test]
    fn constant_features_keep_parent_impurity() {
        let d = ds(vec![vec![1.0, 2.0]; 4], &[1, -1, -1, -1]);
        let out = weight_vs_impurity(&d, SplitStrategy::Median, 5).unwrap();
        let parent = gini(d.class_counts());
        for r in &out {
            assert_eq!(r.weight, 0.0);
            assert_eq!(r.post_split_impurity, parent);
        }
        assert_eq!(out.iter().map(|r| r.feature).collect::<Vec<_>>(), [0, 1]);
    }
}
