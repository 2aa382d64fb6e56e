//! The `dgmml` command line.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 when the
//! input data or model file cannot be used.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{
    bench_speed, compare_strategies, cv_table, run_cv, strategies_table, synthetic, weight_vs_impurity, weights_table,
    CvOptions, Format, Table,
};
use crate::criteria::SplitStrategy;
use crate::dataset::{load_csv, Dataset, Label, LabelColumn};
use crate::error::{Error, Result};
use crate::forest::ForestConfig;
use crate::model::{ModelDocument, ModelSpec};
use crate::tree::{Criterion, Mtry, TrainConfig};

#[derive(Debug, Parser)]
#[command(name = "dgmml", version, about = "GMML-weighted decision trees and forests: train, predict, benchmark")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Candidate features per node: a count, "sqrt" or "all".
    #[arg(long, global = true, default_value = "sqrt")]
    mtry: Mtry,
    /// Minimum samples per leaf
    #[arg(long, global = true, default_value_t = 1)]
    minleaf: usize,
    /// Threshold rule for dgmml splits: closest_means, median or mean.
    #[arg(long, global = true, default_value = "closest_means")]
    strategy: SplitStrategy,
    /// Per-class window of the closest_means rule.
    #[arg(long, global = true, default_value_t = 5)]
    window: usize,
    /// Oblique splits on GMML-weighted projections (dgmml only).
    #[arg(long, global = true)]
    oblique: bool,
    /// Number of trees; 0 trains a single tree.
    #[arg(long, global = true, default_value_t = 0)]
    trees: usize,
    /// dgmml, info_gain, gain_ratio, gini or ihd.
    #[arg(long, global = true, default_value = "dgmml")]
    criterion: Criterion,
    /// Depth limit; unlimited when absent
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Grow forest trees on the full training set.
    #[arg(long, global = true)]
    no_bootstrap: bool,
    /// Use every feature at every forest node.
    #[arg(long, global = true)]
    no_subspaces: bool,
    /// Cross-validation folds
    #[arg(long, global = true, default_value_t = 10)]
    k: usize,
    /// Training repetitions per fold; the median time is reported.
    #[arg(long, global = true, default_value_t = 5)]
    repetitions: usize,
    /// Leave wall-clock columns blank so reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Report format: csv or json (JSON lines)
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    /// Label column name; defaults to the last column.
    #[arg(long, global = true)]
    label_column: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train on a CSV file and write the model as JSON.
    Train {
        data: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Label the rows of a CSV file with a saved model.
    Predict {
        model: PathBuf,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-validate on CSV files or directories of them.
    Cv {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Time tree construction under several criteria.
    Bench {
        /// CSV file; without one, two synthetic Gaussian classes are used.
        data: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "dgmml,info_gain,gain_ratio,gini,ihd")]
        criteria: Vec<Criterion>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        d: usize,
    },
    /// Feature weights against the impurity of splitting on each feature.
    Weights { data: PathBuf },
    /// Compare the three dgmml threshold rules by cross-validated accuracy.
    Strategies {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

/// Class-mean shift of the informative synthetic features in `bench`.
pub const SYNTHETIC_SHIFT: f64 = 1.0;
/// Informative features in the synthetic `bench` data; the rest are noise.
pub const SYNTHETIC_INFORMATIVE: usize = 5;

/// Runs the CLI on `argv` (program name first) with the process streams.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Same as [`cli_main`] with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_data_error() { 2 } else { 1 }
        }
    }
}

impl Global {
    fn label_column(&self) -> LabelColumn {
        self.label_column.clone().map_or(LabelColumn::Last, LabelColumn::Named)
    }

    fn tree_config(&self) -> TrainConfig {
        TrainConfig::new(self.criterion)
            .oblique(self.oblique)
            .mtry(self.mtry)
            .minleaf(self.minleaf)
            .split_strategy(self.strategy)
            .window(self.window)
            .max_depth(self.max_depth)
            .seed(self.seed)
    }

    fn model_spec(&self) -> ModelSpec {
        if self.trees == 0 {
            return ModelSpec::Tree(self.tree_config());
        }
        ModelSpec::Forest(
            ForestConfig::new(self.tree_config())
                .n_trees(self.trees)
                .seed(self.seed)
                .bootstrap(!self.no_bootstrap)
                .subspaces(!self.no_subspaces),
        )
    }

    fn cv_options(&self) -> CvOptions {
        CvOptions::new(self.k, self.seed).repetitions(self.repetitions)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Train { data, output } => {
            let ds = load_csv(data, &g.label_column())?;
            let model = g.model_spec().fit(&ds)?;
            let acc = accuracy(&model.predict_dataset(&ds)?, ds.labels());
            let doc = ModelDocument::new(model, &ds);
            emit(output.as_deref(), out, doc.to_json()? + "\n")?;
            writeln!(err, "training accuracy: {acc:.4}").map_err(stream_error)?;
        }
        Command::Predict { model, input, output } => {
            let text = fs::read_to_string(model).map_err(|source| Error::Io { path: model.clone(), source })?;
            let doc = ModelDocument::from_json(&text)?;
            let (rows, truth) = read_rows(input, &doc, g.label_column.as_deref())?;
            let mut predicted = Vec::with_capacity(rows.len());
            for x in &rows {
                predicted.push(doc.model.predict(x)?);
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label"])?;
            for &p in &predicted {
                w.write_record([doc.label_text(p)])?;
            }
            let bytes = w.into_inner().map_err(|e| stream_error(e.into_error()))?;
            emit(output.as_deref(), out, String::from_utf8(bytes).expect("labels are UTF-8"))?;
            if let Some(truth) = truth {
                writeln!(err, "accuracy: {:.4}", accuracy(&predicted, &truth)).map_err(stream_error)?;
            }
        }
        Command::Cv { paths } => {
            let spec = g.model_spec();
            let mut reports = Vec::new();
            for ds in load_all(paths, &g.label_column())? {
                reports.push(run_cv(&ds, &spec, &g.cv_options())?);
            }
            write_table(&cv_table(&reports, !g.no_timing), g.format, out)?;
        }
        Command::Bench { data, criteria, n, d } => {
            let ds = match data {
                Some(p) => load_csv(p, &g.label_column())?,
                None => synthetic::gaussian_classes(*n, *d, SYNTHETIC_INFORMATIVE.min(*d), SYNTHETIC_SHIFT, g.seed)?,
            };
            let table = bench_speed(&ds, criteria, &g.tree_config(), &g.cv_options())?;
            write_table(&table.table(!g.no_timing), g.format, out)?;
        }
        Command::Weights { data } => {
            let ds = load_csv(data, &g.label_column())?;
            let rows = weight_vs_impurity(&ds, g.strategy, g.window)?;
            write_table(&weights_table(&ds, &rows, g.strategy), g.format, out)?;
        }
        Command::Strategies { paths } => {
            let datasets = load_all(paths, &g.label_column())?;
            let base = g.tree_config();
            let rows = compare_strategies(&datasets, &base, &g.cv_options())?;
            write_table(&strategies_table(&datasets, &rows, &base, &g.cv_options()), g.format, out)?;
        }
    }
    Ok(())
}

fn accuracy(predicted: &[Label], truth: &[Label]) -> f64 {
    predicted.iter().zip(truth).filter(|(p, t)| p == t).count() as f64 / truth.len() as f64
}

fn stream_error(source: std::io::Error) -> Error {
    Error::Io { path: "<output>".into(), source }
}

fn emit(path: Option<&Path>, out: &mut dyn Write, text: String) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Error::Io { path: p.to_owned(), source }),
        None => out.write_all(text.as_bytes()).map_err(stream_error),
    }
}

fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> Result<()> {
    table.write(out, format)
}

/// Loads every CSV named directly or found in a named directory, sorted by
/// dataset name.
fn load_all(paths: &[PathBuf], label_column: &LabelColumn) -> Result<Vec<Dataset>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let entries = fs::read_dir(p).map_err(|source| Error::Io { path: p.clone(), source })?;
            for entry in entries {
                let path = entry.map_err(|source| Error::Io { path: p.clone(), source })?.path();
                if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                    files.push(path);
                }
            }
        } else {
            files.push(p.clone());
        }
    }
    let mut datasets = files.iter().map(|f| load_csv(f, label_column)).collect::<Result<Vec<_>>>()?;
    datasets.sort_by(|a, b| a.name().cmp(b.name()));
    if datasets.is_empty() {
        return Err(Error::Config("no CSV datasets found".into()));
    }
    Ok(datasets)
}

type Rows = (Vec<Vec<f64>>, Option<Vec<Label>>);

/// Feature rows of a CSV file for prediction. A file with one column more
/// than the model's features (or with the named label column) also yields
/// the true labels, read through the model's label names.
fn read_rows(path: &Path, doc: &ModelDocument, label_column: Option<&str>) -> Result<Rows> {
    let file = fs::File::open(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let d = doc.model.d();
    let label_idx = match label_column {
        Some(name) => Some(
            header.iter().position(|h| h == name).ok_or_else(|| Error::Label(format!("no column named {name:?}")))?,
        ),
        None if header.len() == d + 1 => Some(d),
        None if header.len() == d => None,
        None => return Err(Error::Dimension { expected: d, got: header.len() }),
    };
    let mut rows = Vec::new();
    let mut labels = label_idx.map(|_| Vec::new());
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let mut x = Vec::with_capacity(d);
        for (c, cell) in record.iter().enumerate() {
            if Some(c) == label_idx {
                labels.as_mut().expect("label column present").push(parse_label(cell, doc)?);
                continue;
            }
            let v = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse { row: r + 1, col: c + 1, value: cell.to_owned() })?;
            x.push(v);
        }
        if x.len() != d {
            return Err(Error::Dimension { expected: d, got: x.len() });
        }
        rows.push(x);
    }
    Ok((rows, labels))
}

fn parse_label(cell: &str, doc: &ModelDocument) -> Result<Label> {
    match &doc.label_names {
        Some([neg, _]) if cell == neg => Ok(Label::Negative),
        Some([_, pos]) if cell == pos => Ok(Label::Positive),
        Some([neg, pos]) => Err(Error::Label(format!("label {cell:?} is neither {neg:?} nor {pos:?}"))),
        None => match cell {
            "-1" => Ok(Label::Negative),
            "1" | "+1" => Ok(Label::Positive),
            other => Err(Error::Label(format!("label {other:?} is not -1 or 1"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("dgmml").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_args(&["cv", "--bogus", "x.csv"]);
        assert_eq!(code, 1);
        assert!(err.contains("Usage"), "{err}");
        assert_eq!(run_args(&["train"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_is_a_data_error() {
        assert_eq!(run_args(&["weights", "/nonexistent/file.csv"]).0, 2);
    }

    #[test]
    fn oblique_baseline_is_a_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        fs::write(&p, "a,b,y\n1,2,x\n2,1,z\n3,3,x\n4,0,z\n").unwrap();
        let (code, _, err) = run_args(&["train", "--criterion", "gini", "--oblique", p.to_str().unwrap()]);
        assert_eq!(code, 1, "{err}");
    }
}
