//! Decision trees and random forests whose splits come from closed-form
//! diagonal GMML feature weights, together with the exhaustive-search
//! baselines (information gain, gain ratio, Gini, inter-node Hellinger
//! distance) and a cross-validation benchmark harness.
//!
//! ```
//! use dgmml_tree::{Dataset, Label, Tree, TrainConfig};
//!
//! let rows: Vec<Vec<f64>> = [1.0, 2.0, 3.0, 7.0, 8.0, 9.0].iter().map(|&v| vec![v]).collect();
//! let labels = [1, 1, 1, -1, -1, -1].iter().map(|&l| Label::from_i8(l).unwrap()).collect();
//! let ds = Dataset::from_rows_unnamed("line", &rows, labels).unwrap();
//!
//! let tree = Tree::fit(&ds, &TrainConfig::default()).unwrap();
//! assert_eq!(tree.predict(&[2.5]).unwrap(), Label::Positive);
//! ```
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod bench;
pub mod cli;
pub mod criteria;
pub mod dataset;
pub mod error;
pub mod forest;
pub mod model;
pub mod tree;

pub use criteria::{ClassCounts, SplitCriterion, SplitStrategy};
pub use dataset::{Dataset, FoldPlan, Label, LabelColumn, NodeView};
pub use error::{Error, Result};
pub use forest::{Forest, ForestConfig};
pub use model::{Model, ModelDocument, ModelSpec};
pub use tree::{Criterion, Mtry, SplitSpec, TrainConfig, Tree, TreeNode};
