//! Experiment harness: cross-validation, timing, weight-vs-impurity and
//! split-strategy comparisons, plus report emission.

mod cv;
pub mod report;
mod speed;
mod strategies;
pub mod synthetic;
mod weights;

pub use cv::{cv_table, fold_seed, run_cv, Confusion, CvOptions, CvReport, DEFAULT_FOLDS, DEFAULT_REPETITIONS};
pub use report::{Cell, Format, Table};
pub use speed::{bench_speed, SpeedRow, SpeedTable, TIMER_FLOOR_MS};
pub use strategies::{compare_strategies, strategies_table, StrategyRow};
pub use weights::{weight_vs_impurity, weights_table, WeightImpurityRow};
