//! Node scoring: impurity measures and their reductions, closed-form GMML
//! feature weights, threshold placement, and the exhaustive split search.

mod exhaustive;
mod gmml;
mod impurity;
mod split_point;

pub use exhaustive::{best_exhaustive_split, midpoint, SplitScore};
pub(crate) use exhaustive::search as exhaustive_search;
pub use gmml::{
    best_weighted_feature, gmml_derivative, gmml_objective, gmml_weights, scatter_stats, FeatureScatter,
    FeatureWeights, ScatterStats, W_MAX,
};
pub use impurity::{
    entropy, gain_ratio, gini, gini_reduction, hellinger_sq, ihd, info_gain, misclassification_error, ClassCounts,
    SplitCriterion,
};
pub use split_point::{split_point, SplitStrategy, DEFAULT_WINDOW};
