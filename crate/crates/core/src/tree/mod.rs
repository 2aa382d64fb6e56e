//! Tree induction, partitioning and prediction.
//!
//! Growth is greedy and recursive. At each node:
//!
//! 1. a pure node becomes a leaf of its class;
//! 2. a node with fewer than `2·minleaf` samples (or at `max_depth`)
//!    becomes a leaf of its majority class;
//! 3. otherwise `mtry` candidate features are drawn and a split is chosen,
//!    either from closed-form GMML weights or by exhaustive search, and the
//!    two partitions are grown the same way.
//!
//! For the GMML rule a split whose threshold would leave a child with fewer
//! than `minleaf` samples is discarded and the next-ranked candidate is
//! tried. When no candidate works the node becomes a leaf.

mod config;
mod oblique;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use config::{Criterion, Mtry, TrainConfig};
pub use oblique::fit_oblique_node;

use crate::criteria::{exhaustive_search, gmml_weights, split_point, ClassCounts, SplitStrategy};
use crate::dataset::{derive_seed, subsample_features_with, Dataset, Label, NodeView};
use crate::error::{Error, Result};

/// Test applied at an internal node: samples with test value `<= threshold`
/// go left.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SplitSpec {
    AxisParallel { feature: usize, threshold: f64 },
    /// `weights` has one entry per dataset feature; non-candidates are zero.
    Oblique { weights: Vec<f64>, threshold: f64 },
}

impl SplitSpec {
    pub fn threshold(&self) -> f64 {
        match self {
            SplitSpec::AxisParallel { threshold, .. } | SplitSpec::Oblique { threshold, .. } => *threshold,
        }
    }

    /// Value compared against the threshold. `value(j)` yields feature `j`.
    #[inline]
    pub fn test_value(&self, value: impl Fn(usize) -> f64) -> f64 {
        match self {
            SplitSpec::AxisParallel { feature, .. } => value(*feature),
            SplitSpec::Oblique { weights, .. } => project(weights, value),
        }
    }

    #[inline]
    pub fn goes_left(&self, value: impl Fn(usize) -> f64) -> bool {
        self.test_value(value) <= self.threshold()
    }

    fn max_feature(&self) -> Option<usize> {
        match self {
            SplitSpec::AxisParallel { feature, .. } => Some(*feature),
            SplitSpec::Oblique { weights, .. } => weights.len().checked_sub(1),
        }
    }
}

/// `wᵗx` summed in ascending feature order over the non-zero weights.
#[inline]
pub(crate) fn project(weights: &[f64], value: impl Fn(usize) -> f64) -> f64 {
    weights.iter().enumerate().filter(|(_, w)| **w != 0.0).map(|(j, w)| w * value(j)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TreeNode {
    Split {
        #[serde(flatten)]
        split: SplitSpec,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        label: Label,
        counts: ClassCounts,
        depth: usize,
    },
}

impl TreeNode {
    fn leaf(counts: ClassCounts, depth: usize) -> TreeNode {
        TreeNode::Leaf { label: counts.majority(), counts, depth }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    /// Label of the leaf reached by a sample; `value(j)` yields feature `j`.
    pub fn route(&self, value: impl Fn(usize) -> f64) -> Label {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { label, .. } => return *label,
                TreeNode::Split { split, left, right } => {
                    node = if split.goes_left(&value) { left } else { right };
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub node_count: usize,
    pub leaf_count: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub config: TrainConfig,
    pub d: usize,
    pub stats: TreeStats,
    /// Wall-clock construction time; not serialised.
    #[serde(skip)]
    pub train_time_ms: f64,
    pub root: TreeNode,
}

impl Tree {
    /// Grows a tree on every row of `ds`.
    pub fn fit(ds: &Dataset, config: &TrainConfig) -> Result<Tree> {
        Tree::fit_view(&ds.view(), config)
    }

    /// Grows a tree on a subset (or bootstrap multiset) of rows.
    pub fn fit_view(view: &NodeView<'_>, config: &TrainConfig) -> Result<Tree> {
        let start = Instant::now();
        let root = grow(view, config)?;
        let train_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut tree = Tree { config: config.clone(), d: view.dataset().n_features(), stats: TreeStats::default(), train_time_ms, root };
        tree.stats = tree_stats(&tree);
        Ok(tree)
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        predict(self, x)
    }

    /// Predictions for every row of a dataset with the same feature count.
    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<Label>> {
        if ds.n_features() != self.d {
            return Err(Error::Dimension { expected: self.d, got: ds.n_features() });
        }
        Ok((0..ds.n_samples()).map(|i| self.root.route(|j| ds.value(i, j))).collect())
    }

    /// Checks structural invariants after deserialisation.
    pub fn validate(&self) -> Result<()> {
        fn walk(node: &TreeNode, d: usize) -> Result<()> {
            match node {
                TreeNode::Leaf { .. } => Ok(()),
                TreeNode::Split { split, left, right } => {
                    let bad_weights = matches!(split, SplitSpec::Oblique { weights, .. }
                        if weights.len() != d || weights.iter().any(|w| !w.is_finite()) || weights.iter().all(|&w| w == 0.0));
                    if split.max_feature().is_none_or(|f| f >= d) || bad_weights || !split.threshold().is_finite() {
                        return Err(Error::Contract(format!("malformed split {split:?} for d={d}")));
                    }
                    walk(left, d)?;
                    walk(right, d)
                }
            }
        }
        walk(&self.root, self.d)
    }
}

/// Splits a node by a test; either side may come back empty.
pub fn partition<'a>(node: &NodeView<'a>, split: &SplitSpec) -> (NodeView<'a>, NodeView<'a>) {
    let (l, r) = partition_indices(node, split);
    (NodeView::from_sorted_unchecked(node.dataset(), l), NodeView::from_sorted_unchecked(node.dataset(), r))
}

fn partition_indices(node: &NodeView<'_>, split: &SplitSpec) -> (Vec<usize>, Vec<usize>) {
    let ds = node.dataset();
    let mut left = Vec::new();
    let mut right = Vec::new();
    match split {
        SplitSpec::AxisParallel { feature, threshold } => {
            let col = ds.column(*feature);
            for &i in node.indices() {
                if col[i] <= *threshold {
                    left.push(i)
                } else {
                    right.push(i)
                }
            }
        }
        SplitSpec::Oblique { .. } => {
            for &i in node.indices() {
                if split.goes_left(|j| ds.value(i, j)) {
                    left.push(i)
                } else {
                    right.push(i)
                }
            }
        }
    }
    (left, right)
}

/// Grows the subtree rooted at `node`.
pub fn grow(node: &NodeView<'_>, config: &TrainConfig) -> Result<TreeNode> {
    let ds = node.dataset();
    let mtry = config.validate(ds.n_features())?;
    if node.is_empty() {
        return Err(Error::Contract("cannot grow a tree on an empty node".into()));
    }
    let mut grower = Grower { ds, config, mtry, rng: ChaCha8Rng::seed_from_u64(derive_seed(config.seed, 0x7EE)) };
    Ok(grower.grow(node.indices().to_vec(), 0))
}

struct Grower<'a> {
    ds: &'a Dataset,
    config: &'a TrainConfig,
    mtry: usize,
    rng: ChaCha8Rng,
}

impl Grower<'_> {
    fn grow(&mut self, indices: Vec<usize>, depth: usize) -> TreeNode {
        let view = NodeView::from_sorted_unchecked(self.ds, indices);
        let counts = view.class_counts();
        if counts.is_pure() {
            return TreeNode::leaf(counts, depth);
        }
        if view.len() < 2 * self.config.minleaf || self.config.max_depth.is_some_and(|m| depth >= m) {
            return TreeNode::leaf(counts, depth);
        }
        let candidates =
            subsample_features_with(self.ds.n_features(), self.mtry, &mut self.rng).expect("mtry validated");
        match self.choose_split(&view, &candidates) {
            Some((split, left, right)) => {
                drop(view);
                let left = self.grow(left, depth + 1);
                let right = self.grow(right, depth + 1);
                TreeNode::Split { split, left: Box::new(left), right: Box::new(right) }
            }
            None => TreeNode::leaf(counts, depth),
        }
    }

    fn accept(&self, view: &NodeView<'_>, split: SplitSpec) -> Option<(SplitSpec, Vec<usize>, Vec<usize>)> {
        let (l, r) = partition_indices(view, &split);
        (l.len() >= self.config.minleaf && r.len() >= self.config.minleaf).then_some((split, l, r))
    }

    fn choose_split(&mut self, view: &NodeView<'_>, candidates: &[usize]) -> Option<(SplitSpec, Vec<usize>, Vec<usize>)> {
        if let Some(criterion) = self.config.criterion.exhaustive() {
            let best = exhaustive_search(view, candidates, criterion, self.config.minleaf)?;
            return self.accept(view, SplitSpec::AxisParallel { feature: best.feature, threshold: best.threshold });
        }
        if self.config.oblique {
            if let Ok(split) = fit_oblique_node(view, candidates, self.config.split_strategy, self.config.window) {
                if let Some(found) = self.accept(view, split) {
                    return Some(found);
                }
            }
        }
        self.closed_form_axis_split(view, candidates)
    }

    fn closed_form_axis_split(
        &self,
        view: &NodeView<'_>,
        candidates: &[usize],
    ) -> Option<(SplitSpec, Vec<usize>, Vec<usize>)> {
        let (weights, _) = gmml_weights(view, candidates).ok()?;
        for pos in weights.ranking() {
            if weights.weights[pos] <= 0.0 {
                break;
            }
            let feature = weights.candidate_indices[pos];
            let threshold = feature_threshold(view, feature, self.config.split_strategy, self.config.window)?;
            if let Some(found) = self.accept(view, SplitSpec::AxisParallel { feature, threshold }) {
                return Some(found);
            }
        }
        None
    }
}

/// Threshold for `feature` at a node under the given strategy.
pub(crate) fn feature_threshold(view: &NodeView<'_>, feature: usize, strategy: SplitStrategy, window: usize) -> Option<f64> {
    let (pos, neg) = view.class_values(feature);
    split_point(&pos, &neg, strategy, window).ok()
}

pub fn predict(tree: &Tree, x: &[f64]) -> Result<Label> {
    if x.len() != tree.d {
        return Err(Error::Dimension { expected: tree.d, got: x.len() });
    }
    Ok(tree.root.route(|j| x[j]))
}

pub fn tree_stats(tree: &Tree) -> TreeStats {
    fn walk(node: &TreeNode, depth: usize, s: &mut TreeStats) {
        s.node_count += 1;
        s.max_depth = s.max_depth.max(depth);
        match node {
            TreeNode::Leaf { .. } => s.leaf_count += 1,
            TreeNode::Split { left, right, .. } => {
                walk(left, depth + 1, s);
                walk(right, depth + 1, s);
            }
        }
    }
    let mut s = TreeStats::default();
    walk(&tree.root, 0, &mut s);
    s
}
