use serde::{Deserialize, Serialize};

use super::cv::{mean, run_cv, CvOptions};
use super::report::{config_hash, Cell, Table};
use crate::criteria::SplitStrategy;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::tree::{Criterion, TrainConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyRow {
    pub strategy: SplitStrategy,
    /// Cross-validated accuracy per dataset, in input order.
    pub accuracies: Vec<f64>,
    pub mean_accuracy: f64,
}

/// Cross-validates a dGMML tree under each threshold strategy on every
/// dataset. Returns one row per strategy in [`SplitStrategy::ALL`] order.
pub fn compare_strategies(datasets: &[Dataset], base: &TrainConfig, options: &CvOptions) -> Result<Vec<StrategyRow>> {
    if datasets.is_empty() {
        return Err(Error::Config("compare_strategies needs at least one dataset".into()));
    }
    if base.criterion != Criterion::Dgmml {
        return Err(Error::Config("split strategies only apply to the dgmml criterion".into()));
    }
    SplitStrategy::ALL
        .into_iter()
        .map(|strategy| {
            let spec = ModelSpec::Tree(base.clone().split_strategy(strategy));
            let accuracies =
                datasets.iter().map(|ds| run_cv(ds, &spec, options).map(|r| r.mean_accuracy)).collect::<Result<Vec<_>>>()?;
            Ok(StrategyRow { strategy, mean_accuracy: mean(&accuracies), accuracies })
        })
        .collect()
}

pub fn strategies_table(datasets: &[Dataset], rows: &[StrategyRow], base: &TrainConfig, options: &CvOptions) -> Table {
    let names: Vec<&str> = datasets.iter().map(Dataset::name).collect();
    let mut t = Table::new(&["strategy", "mean_accuracy", "datasets", "accuracies"])
        .meta("report", "split_strategies")
        .meta("seed", options.seed)
        .meta("config_hash", config_hash(&(base, options)));
    for r in rows {
        t.push(vec![
            r.strategy.as_str().into(),
            Cell::Fixed(r.mean_accuracy),
            Cell::List(names.iter().map(|&n| n.into()).collect()),
            Cell::List(r.accuracies.iter().map(|&a| Cell::Fixed(a)).collect()),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Label;

    #[test]
    fn separable_data_is_perfect_under_every_strategy() {
        let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![if i < 15 { i as f64 } else { 50.0 + i as f64 }]).collect();
        let labels = (0..30).map(|i| if i < 15 { Label::Negative } else { Label::Positive }).collect();
        let ds = Dataset::from_rows_unnamed("sep", &rows, labels).unwrap();
        let rows = compare_strategies(&[ds], &TrainConfig::default(), &CvOptions::new(3, 1).repetitions(1)).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.mean_accuracy == 1.0));
    }

    #[test]
    fn empty_list_is_a_config_error() {
        let err = compare_strategies(&[], &TrainConfig::default(), &CvOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }
}
