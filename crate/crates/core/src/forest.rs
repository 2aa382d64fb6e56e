//! Random forests: bagging plus per-node random feature subspaces over any
//! tree criterion, with unweighted majority voting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{bootstrap_view, derive_seed, Dataset, Label, NodeView};
use crate::error::{Error, Result};
use crate::tree::{Mtry, TrainConfig, Tree};

pub const DEFAULT_TREES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub n_trees: usize,
    /// Per-tree settings. Its seed is replaced by each tree's derived seed.
    pub tree_config: TrainConfig,
    pub seed: u64,
    /// Train each tree on a bootstrap resample.
    pub bootstrap: bool,
    /// Draw `tree_config.mtry` candidates per node; when off every feature
    /// is a candidate.
    pub subspaces: bool,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            n_trees: DEFAULT_TREES,
            tree_config: TrainConfig::default().mtry(Mtry::Sqrt),
            seed: 0,
            bootstrap: true,
            subspaces: true,
        }
    }
}

impl ForestConfig {
    pub fn new(tree_config: TrainConfig) -> Self {
        ForestConfig { tree_config, ..Default::default() }
    }

    pub fn n_trees(mut self, n: usize) -> Self {
        self.n_trees = n;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn bootstrap(mut self, on: bool) -> Self {
        self.bootstrap = on;
        self
    }

    pub fn subspaces(mut self, on: bool) -> Self {
        self.subspaces = on;
        self
    }

    /// Seed of tree `t`; independent of how many trees are grown or in
    /// which order.
    pub fn tree_seed(&self, t: usize) -> u64 {
        derive_seed(self.seed, t as u64)
    }

    fn tree_config_for(&self, t: usize) -> TrainConfig {
        let mut cfg = self.tree_config.clone();
        cfg.seed = self.tree_seed(t);
        if !self.subspaces {
            cfg.mtry = Mtry::All;
        }
        cfg
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub config: ForestConfig,
    pub d: usize,
    pub per_tree_seeds: Vec<u64>,
    pub trees: Vec<Tree>,
}

impl Forest {
    pub fn fit(ds: &Dataset, config: &ForestConfig) -> Result<Forest> {
        grow_forest(ds, config)
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        predict_forest(self, x)
    }

    /// `(negative, positive)` vote counts for one sample.
    pub fn votes(&self, x: &[f64]) -> Result<(usize, usize)> {
        if x.len() != self.d {
            return Err(Error::Dimension { expected: self.d, got: x.len() });
        }
        Ok(self.votes_with(|j| x[j]))
    }

    fn votes_with(&self, value: impl Fn(usize) -> f64) -> (usize, usize) {
        let pos = self.trees.iter().filter(|t| t.root.route(&value) == Label::Positive).count();
        (self.trees.len() - pos, pos)
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<Label>> {
        if ds.n_features() != self.d {
            return Err(Error::Dimension { expected: self.d, got: ds.n_features() });
        }
        Ok((0..ds.n_samples()).map(|i| vote_label(self.votes_with(|j| ds.value(i, j)))).collect())
    }

    /// Sum of per-tree construction times in milliseconds.
    pub fn train_time_ms(&self) -> f64 {
        self.trees.iter().map(|t| t.train_time_ms).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trees.len() != self.config.n_trees || self.per_tree_seeds.len() != self.trees.len() {
            return Err(Error::Contract("forest tree count does not match its config".into()));
        }
        for t in &self.trees {
            if t.d != self.d {
                return Err(Error::Contract("trees disagree on the feature count".into()));
            }
            t.validate()?;
        }
        Ok(())
    }
}

fn vote_label((neg, pos): (usize, usize)) -> Label {
    if pos > neg {
        Label::Positive
    } else {
        Label::Negative
    }
}

pub fn grow_forest(ds: &Dataset, config: &ForestConfig) -> Result<Forest> {
    grow_forest_view(&ds.view(), config)
}

/// Grows a forest on a subset of rows. Trees are built in parallel; each
/// depends only on its own derived seed.
pub fn grow_forest_view(view: &NodeView<'_>, config: &ForestConfig) -> Result<Forest> {
    if config.n_trees < 1 {
        return Err(Error::Config("a forest needs at least one tree".into()));
    }
    let d = view.dataset().n_features();
    config.tree_config.validate(d)?;
    if view.class_counts().is_pure() {
        return Err(Error::SingleClass);
    }
    let trees = (0..config.n_trees)
        .into_par_iter()
        .map(|t| {
            let cfg = config.tree_config_for(t);
            if config.bootstrap {
                Tree::fit_view(&bootstrap_view(view, derive_seed(cfg.seed, 0xB007)), &cfg)
            } else {
                Tree::fit_view(view, &cfg)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Forest {
        config: config.clone(),
        d,
        per_tree_seeds: (0..config.n_trees).map(|t| config.tree_seed(t)).collect(),
        trees,
    })
}

/// Majority vote; an even split goes to the negative class.
pub fn predict_forest(forest: &Forest, x: &[f64]) -> Result<Label> {
    forest.votes(x).map(vote_label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{Criterion, TreeNode};
    use crate::ClassCounts;

    fn noisy(n: usize) -> Dataset {
        let rows: Vec<Vec<f64>> =
            (0..n).map(|i| vec![(i as f64 * 0.61).sin() + i as f64 / n as f64, (i as f64 * 2.3).cos()]).collect();
        let labels = (0..n).map(|i| if (i * 13) % 7 < 3 { Label::Positive } else { Label::Negative }).collect();
        Dataset::from_rows_unnamed("noisy", &rows, labels).unwrap()
    }

    fn leaf(label: Label) -> Tree {
        Tree {
            config: TrainConfig::default(),
            d: 1,
            stats: Default::default(),
            train_time_ms: 0.0,
            root: TreeNode::Leaf { label, counts: ClassCounts::new(1, 1), depth: 0 },
        }
    }

    #[test]
    fn majority_vote() {
        let f = Forest {
            config: ForestConfig::default().n_trees(3),
            d: 1,
            per_tree_seeds: vec![0; 3],
            trees: vec![leaf(Label::Positive), leaf(Label::Positive), leaf(Label::Negative)],
        };
        assert_eq!(f.predict(&[0.0]).unwrap(), Label::Positive);
        assert_eq!(f.votes(&[0.0]).unwrap(), (1, 2));
        assert!(matches!(f.predict(&[0.0, 1.0]), Err(Error::Dimension { .. })));
        let tie = Forest { trees: vec![leaf(Label::Positive), leaf(Label::Negative)], ..f };
        assert_eq!(tie.predict(&[0.0]).unwrap(), Label::Negative);
    }

    #[test]
    fn single_tree_without_bootstrap_equals_tree() {
        let ds = noisy(60);
        let cfg = ForestConfig::new(TrainConfig::default().mtry(Mtry::All)).n_trees(1).bootstrap(false);
        let forest = grow_forest(&ds, &cfg).unwrap();
        let tree = Tree::fit(&ds, &cfg.tree_config_for(0)).unwrap();
        assert_eq!(forest.predict_dataset(&ds).unwrap(), tree.predict_dataset(&ds).unwrap());
    }

    #[test]
    fn ablated_forest_trees_are_identical() {
        let ds = noisy(50);
        let cfg = ForestConfig::new(TrainConfig::new(Criterion::Gini)).n_trees(4).bootstrap(false).subspaces(false);
        let forest = grow_forest(&ds, &cfg).unwrap();
        for t in &forest.trees[1..] {
            assert_eq!(t.root, forest.trees[0].root);
        }
    }

    #[test]
    fn forests_are_deterministic() {
        let ds = noisy(80);
        let cfg = ForestConfig::default().n_trees(6).seed(17);
        let a = grow_forest(&ds, &cfg).unwrap();
        let b = grow_forest(&ds, &cfg).unwrap();
        assert_eq!(a.trees.iter().map(|t| &t.root).collect::<Vec<_>>(), b.trees.iter().map(|t| &t.root).collect::<Vec<_>>());
        assert_eq!(a.per_tree_seeds, b.per_tree_seeds);
        for i in 0..ds.n_samples() {
            let (neg, pos) = a.votes(&ds.row(i)).unwrap();
            assert_eq!(neg + pos, 6);
        }
    }

    #[test]
    fn config_errors() {
        let ds = noisy(20);
        assert!(grow_forest(&ds, &ForestConfig::default().n_trees(0)).is_err());
        let one_class = Dataset::from_rows_unnamed("p", &[vec![1.0], vec![2.0]], vec![Label::Positive; 2]).unwrap();
        assert!(matches!(grow_forest(&one_class, &ForestConfig::default()), Err(Error::SingleClass)));
    }
}
