use serde::{Deserialize, Serialize};

use super::cv::{run_cv, CvOptions};
use super::report::{config_hash, Cell, Table};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::tree::{Criterion, TrainConfig};

/// Mean fold times below this are dominated by timer and allocation noise.
pub const TIMER_FLOOR_MS: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedRow {
    pub criterion: Criterion,
    pub mean_accuracy: f64,
    pub train_time_ms: f64,
    /// `train_time_ms / reference train_time_ms`; above 1 means slower than
    /// the reference.
    pub ratio: f64,
    pub below_resolution: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedTable {
    pub dataset: String,
    /// dGMML when it is in the list, otherwise the first criterion.
    pub reference: Criterion,
    pub options: CvOptions,
    pub base: TrainConfig,
    pub rows: Vec<SpeedRow>,
}

/// Cross-validated construction time of single trees under each criterion,
/// all sharing the other settings of `base`.
pub fn bench_speed(ds: &Dataset, criteria: &[Criterion], base: &TrainConfig, options: &CvOptions) -> Result<SpeedTable> {
    let Some(&first) = criteria.first() else {
        return Err(Error::Config("no criteria to time".into()));
    };
    let reference = if criteria.contains(&Criterion::Dgmml) { Criterion::Dgmml } else { first };
    let mut runs = Vec::with_capacity(criteria.len());
    for &criterion in criteria {
        let mut cfg = base.clone();
        cfg.criterion = criterion;
        cfg.oblique = cfg.oblique && criterion == Criterion::Dgmml;
        runs.push((criterion, run_cv(ds, &ModelSpec::Tree(cfg), options)?));
    }
    let ref_ms = runs.iter().find(|(c, _)| *c == reference).map(|(_, r)| r.train_time_ms).expect("reference was run");
    let rows = runs
        .into_iter()
        .map(|(criterion, r)| SpeedRow {
            criterion,
            mean_accuracy: r.mean_accuracy,
            train_time_ms: r.train_time_ms,
            ratio: r.train_time_ms / ref_ms,
            below_resolution: r.train_time_ms < TIMER_FLOOR_MS || ref_ms < TIMER_FLOOR_MS,
        })
        .collect();
    Ok(SpeedTable { dataset: ds.name().to_owned(), reference, options: *options, base: base.clone(), rows })
}

impl SpeedTable {
    /// With `timing` off the time and ratio cells are blank.
    pub fn table(&self, timing: bool) -> Table {
        let mut t = Table::new(&[
            "dataset",
            "criterion",
            "mean_accuracy",
            "train_time_ms",
            "ratio",
            "reference",
            "below_resolution",
        ])
        .meta("report", "speed")
        .meta("seed", self.options.seed)
        .meta("config_hash", config_hash(&(&self.base, &self.options)))
        .meta("timing", format!("median of {} repetitions per fold, mean over {} folds", self.options.repetitions, self.options.k));
        for r in &self.rows {
            t.push(vec![
                self.dataset.as_str().into(),
                r.criterion.as_str().into(),
                Cell::Fixed(r.mean_accuracy),
                if timing { Cell::Fixed(r.train_time_ms) } else { Cell::Na },
                if timing { Cell::Fixed(r.ratio) } else { Cell::Na },
                self.reference.as_str().into(),
                if timing { r.below_resolution.into() } else { Cell::Na },
            ]);
        }
        t
    }
}
