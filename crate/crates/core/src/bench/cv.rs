use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::report::{config_hash, Cell, Table};
use crate::dataset::{derive_seed, stratified_kfold, Dataset, Label};
use crate::error::{Error, Result};
use crate::model::ModelSpec;

pub const DEFAULT_FOLDS: usize = 10;
pub const DEFAULT_REPETITIONS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    /// Each fold is trained this many times and the median wall time kept.
    pub repetitions: usize,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions { k: DEFAULT_FOLDS, seed: 0, repetitions: DEFAULT_REPETITIONS }
    }
}

impl CvOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        CvOptions { k, seed, ..Default::default() }
    }

    pub fn repetitions(mut self, r: usize) -> Self {
        self.repetitions = r;
        self
    }
}

/// Held-out confusion counts with `+1` as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Confusion {
    pub fn record(&mut self, truth: Label, predicted: Label) {
        match (truth, predicted) {
            (Label::Positive, Label::Positive) => self.tp += 1,
            (Label::Negative, Label::Positive) => self.fp += 1,
            (Label::Negative, Label::Negative) => self.tn += 1,
            (Label::Positive, Label::Negative) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn accuracy(&self) -> f64 {
        (self.tp + self.tn) as f64 / self.total() as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub dataset: String,
    pub model: ModelSpec,
    pub options: CvOptions,
    pub n: usize,
    pub d: usize,
    pub fold_accuracies: Vec<f64>,
    pub fold_confusion: Vec<Confusion>,
    /// Median construction time of each fold.
    pub fold_train_ms: Vec<f64>,
    pub mean_accuracy: f64,
    /// Mean of `fold_train_ms`.
    pub train_time_ms: f64,
}

/// Seed of the model trained on fold `fold`.
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    derive_seed(derive_seed(seed, 0xC5), fold as u64)
}

/// Stratified k-fold cross-validation. Folds run in order; each fold's model
/// is seeded from the run seed and the fold index.
pub fn run_cv(ds: &Dataset, model: &ModelSpec, options: &CvOptions) -> Result<CvReport> {
    if options.repetitions < 1 {
        return Err(Error::Config("timing repetitions must be at least 1".into()));
    }
    model.tree_config().validate(ds.n_features())?;
    let plan = stratified_kfold(ds, options.k, options.seed)?;
    let mut fold_accuracies = Vec::with_capacity(options.k);
    let mut fold_confusion = Vec::with_capacity(options.k);
    let mut fold_train_ms = Vec::with_capacity(options.k);
    for fold in 0..options.k {
        let train = ds.subset(plan.train_indices(fold))?;
        let spec = model.with_seed(fold_seed(options.seed, fold));
        let mut times = Vec::with_capacity(options.repetitions);
        let mut fitted = None;
        for _ in 0..options.repetitions {
            let start = Instant::now();
            let m = spec.fit_view(&train)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            fitted.get_or_insert(m);
        }
        let fitted = fitted.expect("at least one repetition");

        let mut confusion = Confusion::default();
        for i in plan.test_indices(fold) {
            confusion.record(ds.label(i), fitted.predict(&ds.row(i))?);
        }
        fold_accuracies.push(confusion.accuracy());
        fold_confusion.push(confusion);
        fold_train_ms.push(median(&mut times));
    }
    Ok(CvReport {
        dataset: ds.name().to_owned(),
        model: model.clone(),
        options: *options,
        n: ds.n_samples(),
        d: ds.n_features(),
        mean_accuracy: mean(&fold_accuracies),
        train_time_ms: mean(&fold_train_ms),
        fold_accuracies,
        fold_confusion,
        fold_train_ms,
    })
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub(crate) fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// One row per report. Timing columns are blank when `timing` is false so
/// that repeated runs give identical bytes.
pub fn cv_table(reports: &[CvReport], timing: bool) -> Table {
    let models: Vec<&ModelSpec> = reports.iter().map(|r| &r.model).collect();
    let mut t = Table::new(&[
        "dataset",
        "model",
        "criterion",
        "oblique",
        "trees",
        "strategy",
        "mtry",
        "minleaf",
        "n",
        "d",
        "k",
        "seed",
        "mean_accuracy",
        "train_time_ms",
        "fold_accuracies",
        "fold_tp",
        "fold_fp",
        "fold_tn",
        "fold_fn",
        "fold_train_ms",
    ])
    .meta("report", "cross_validation")
    .meta("config_hash", config_hash(&models));
    if let Some(r) = reports.first() {
        t = t.meta("seed", r.options.seed);
    }
    let ms = |v: f64| if timing { Cell::Fixed(v) } else { Cell::Na };
    let ints = |f: fn(&Confusion) -> usize, r: &CvReport| Cell::List(r.fold_confusion.iter().map(|c| f(c).into()).collect());
    for r in reports {
        let c = r.model.tree_config();
        t.push(vec![
            r.dataset.as_str().into(),
            r.model.descriptor().into(),
            c.criterion.as_str().into(),
            c.oblique.into(),
            r.model.n_trees().unwrap_or(1).into(),
            c.split_strategy.as_str().into(),
            c.mtry.to_string().into(),
            c.minleaf.into(),
            r.n.into(),
            r.d.into(),
            r.options.k.into(),
            Cell::str(r.options.seed.to_string()),
            Cell::Fixed(r.mean_accuracy),
            ms(r.train_time_ms),
            Cell::List(r.fold_accuracies.iter().map(|&a| Cell::Fixed(a)).collect()),
            ints(|c| c.tp, r),
            ints(|c| c.fp, r),
            ints(|c| c.tn, r),
            ints(|c| c.fn_, r),
            Cell::List(r.fold_train_ms.iter().map(|&v| ms(v)).collect()),
        ]);
    }
    t
}
