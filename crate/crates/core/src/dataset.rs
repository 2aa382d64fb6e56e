//! Tabular binary-classification data: CSV ingestion, node views over row
//! subsets, and the seeded resampling used by cross-validation and forests.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::criteria::ClassCounts;
use crate::error::{Error, Result};

/// Binary class label, `-1` or `+1` on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Negative => -1,
            Label::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Label> {
        match v {
            -1 => Some(Label::Negative),
            1 => Some(Label::Positive),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i8::deserialize(d)?;
        Label::from_i8(v).ok_or_else(|| serde::de::Error::custom(format!("label must be -1 or 1, got {v}")))
    }
}

/// Immutable n×d feature matrix (stored column-major) with binary labels.
#[derive(Clone, Debug)]
pub struct Dataset {
    name: String,
    columns: Vec<Vec<f64>>,
    labels: Vec<Label>,
    feature_names: Vec<String>,
    /// Raw label strings for the negative and positive class, when known.
    label_names: Option<[String; 2]>,
}

impl Dataset {
    /// Builds a dataset from row-major feature vectors.
    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<f64>],
        labels: Vec<Label>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let d = feature_names.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
            return Err(Error::Contract(format!("row {i} has {} values, expected {d}", r.len())));
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); d];
        for row in rows {
            for (col, &v) in columns.iter_mut().zip(row) {
                col.push(v);
            }
        }
        Self::from_columns(name, columns, labels, feature_names)
    }

    pub fn from_columns(
        name: impl Into<String>,
        columns: Vec<Vec<f64>>,
        labels: Vec<Label>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let n = labels.len();
        let d = columns.len();
        if n == 0 || d == 0 {
            return Err(Error::Contract(format!("dataset must be non-empty, got n={n}, d={d}")));
        }
        if feature_names.len() != d {
            return Err(Error::Contract(format!(
                "{} feature names for {d} columns",
                feature_names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &feature_names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Contract(format!("duplicate feature name {name:?}")));
            }
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::Contract(format!("column {j} has {} values, expected {n}", col.len())));
            }
            if let Some(i) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::Parse { row: i + 1, col: j + 1, value: col[i].to_string() });
            }
        }
        Ok(Dataset { name: name.into(), columns, labels, feature_names, label_names: None })
    }

    /// Same dataset with generic names `x0..x{d-1}`.
    pub fn from_rows_unnamed(name: impl Into<String>, rows: &[Vec<f64>], labels: Vec<Label>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        Self::from_rows(name, rows, labels, (0..d).map(|j| format!("x{j}")).collect())
    }

    pub fn with_label_names(mut self, negative: impl Into<String>, positive: impl Into<String>) -> Self {
        self.label_names = Some([negative.into(), positive.into()]);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn label_names(&self) -> Option<&[String; 2]> {
        self.label_names.as_ref()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.columns[j][i]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::from_labels(self.labels.iter().copied())
    }

    /// View over every row.
    pub fn view(&self) -> NodeView<'_> {
        NodeView { dataset: self, indices: (0..self.n_samples()).collect() }
    }

    /// View over the given rows; indices are sorted, duplicates kept.
    pub fn subset(&self, indices: impl IntoIterator<Item = usize>) -> Result<NodeView<'_>> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        NodeView::new(self, indices)
    }
}

/// A multiset of rows of a [`Dataset`], kept in non-decreasing index order.
#[derive(Clone, Debug)]
pub struct NodeView<'a> {
    dataset: &'a Dataset,
    indices: Vec<usize>,
}

impl<'a> NodeView<'a> {
    pub fn new(dataset: &'a Dataset, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Contract("node view must be non-empty".into()));
        }
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Contract("node view indices must be sorted".into()));
        }
        if *indices.last().unwrap() >= dataset.n_samples() {
            return Err(Error::Contract("node view index out of range".into()));
        }
        Ok(NodeView { dataset, indices })
    }

    /// Caller guarantees the indices are sorted and in range; may be empty.
    pub(crate) fn from_sorted_unchecked(dataset: &'a Dataset, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        NodeView { dataset, indices }
    }

    pub fn dataset(&self) -> &'a Dataset {
        self.dataset
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn class_counts(&self) -> ClassCounts {
        ClassCounts::from_labels(self.indices.iter().map(|&i| self.dataset.label(i)))
    }

    /// Values of feature `j` at the view's rows, in row order.
    pub fn feature_values(&self, j: usize) -> Vec<f64> {
        let col = self.dataset.column(j);
        self.indices.iter().map(|&i| col[i]).collect()
    }

    /// Values of feature `j` split by class in row order: `(positive, negative)`.
    pub fn class_values(&self, j: usize) -> (Vec<f64>, Vec<f64>) {
        let col = self.dataset.column(j);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &i in &self.indices {
            match self.dataset.label(i) {
                Label::Positive => pos.push(col[i]),
                Label::Negative => neg.push(col[i]),
            }
        }
        (pos, neg)
    }

    /// Values of feature `j` split by class, each sorted ascending:
    /// `(positive, negative)`.
    pub fn class_sorted_values(&self, j: usize) -> (Vec<f64>, Vec<f64>) {
        let (mut pos, mut neg) = self.class_values(j);
        pos.sort_unstable_by(f64::total_cmp);
        neg.sort_unstable_by(f64::total_cmp);
        (pos, neg)
    }
}

/// Where the class label lives in a CSV file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum LabelColumn {
    #[default]
    Last,
    Named(String),
}

/// Loads a comma-separated file with one header row. The lexicographically
/// smaller raw label maps to `-1`; the mapping is kept in
/// [`Dataset::label_names`].
pub fn load_csv(path: impl AsRef<Path>, label_column: &LabelColumn) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    read_csv(file, name, label_column)
}

/// Parses CSV from any reader; see [`load_csv`].
pub fn read_csv<R: std::io::Read>(reader: R, name: impl Into<String>, label_column: &LabelColumn) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.len() < 2 {
        return Err(Error::Label(format!("need at least one feature and a label column, header has {}", header.len())));
    }
    let label_idx = match label_column {
        LabelColumn::Last => header.len() - 1,
        LabelColumn::Named(n) => header
            .iter()
            .position(|h| h == n)
            .ok_or_else(|| Error::Label(format!("no column named {n:?}")))?,
    };
    let feature_names: Vec<String> =
        header.iter().enumerate().filter(|&(c, _)| c != label_idx).map(|(_, h)| h.clone()).collect();

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); feature_names.len()];
    let mut raw_labels = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let mut j = 0;
        for (c, cell) in record.iter().enumerate() {
            if c == label_idx {
                raw_labels.push(cell.to_owned());
                continue;
            }
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::Parse { row: r + 1, col: c + 1, value: cell.to_owned() })?;
            columns[j].push(v);
            j += 1;
        }
    }
    if raw_labels.is_empty() {
        return Err(Error::Label("file has no data rows".into()));
    }
    let mut distinct: Vec<&str> = raw_labels.iter().map(String::as_str).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 2 {
        return Err(Error::Label(format!("expected exactly 2 distinct labels, found {}", distinct.len())));
    }
    let (neg, pos) = (distinct[0].to_owned(), distinct[1].to_owned());
    let labels = raw_labels.iter().map(|l| if *l == neg { Label::Negative } else { Label::Positive }).collect();
    Ok(Dataset::from_columns(name, columns, labels, feature_names)?.with_label_names(neg, pos))
}

/// Fold assignment for k-fold cross-validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPlan {
    k: usize,
    assignments: Vec<usize>,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] == fold).collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] != fold).collect()
    }
}

/// Stratified k-fold partition. Each class is shuffled independently, then
/// the negatives followed by the positives are dealt round-robin over the
/// folds, so fold sizes differ by at most one overall and within each class.
pub fn stratified_kfold(ds: &Dataset, k: usize, seed: u64) -> Result<FoldPlan> {
    let n = ds.n_samples();
    if k < 2 {
        return Err(Error::Config(format!("k must be at least 2, got {k}")));
    }
    if k > n {
        return Err(Error::Config(format!("k={k} exceeds the {n} available samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut neg: Vec<usize> = (0..n).filter(|&i| ds.label(i) == Label::Negative).collect();
    let mut pos: Vec<usize> = (0..n).filter(|&i| ds.label(i) == Label::Positive).collect();
    neg.shuffle(&mut rng);
    pos.shuffle(&mut rng);
    let mut assignments = vec![0; n];
    for (slot, i) in neg.into_iter().chain(pos).enumerate() {
        assignments[i] = slot % k;
    }
    Ok(FoldPlan { k, assignments })
}

/// Bootstrap resample of every row: n uniform draws with replacement,
/// returned sorted with multiplicity.
pub fn bootstrap_sample(ds: &Dataset, seed: u64) -> NodeView<'_> {
    NodeView::from_sorted_unchecked(ds, bootstrap_indices(ds.n_samples(), seed))
}

/// Bootstrap resample drawn from `source` (itself possibly a subset).
pub fn bootstrap_view<'a>(source: &NodeView<'a>, seed: u64) -> NodeView<'a> {
    let mut idx: Vec<usize> =
        bootstrap_indices(source.len(), seed).into_iter().map(|p| source.indices[p]).collect();
    idx.sort_unstable();
    NodeView::from_sorted_unchecked(source.dataset, idx)
}

fn bootstrap_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    idx.sort_unstable();
    idx
}

/// `mtry` distinct feature indices out of `d`, uniform without replacement,
/// returned in ascending order.
pub fn subsample_features(d: usize, mtry: usize, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    subsample_features_with(d, mtry, &mut rng)
}

pub(crate) fn subsample_features_with<R: Rng + ?Sized>(d: usize, mtry: usize, rng: &mut R) -> Result<Vec<usize>> {
    if mtry < 1 || mtry > d {
        return Err(Error::Config(format!("mtry must lie in [1, {d}], got {mtry}")));
    }
    if mtry == d {
        return Ok((0..d).collect());
    }
    let mut picked = rand::seq::index::sample(rng, d, mtry).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

/// `⌈√d⌉`, the default candidate count for forests and benchmarks.
pub fn sqrt_mtry(d: usize) -> usize {
    let mut m = (d as f64).sqrt().ceil() as usize;
    // guard against float rounding at perfect squares
    while m > 1 && (m - 1) * (m - 1) >= d {
        m -= 1;
    }
    while m * m < d {
        m += 1;
    }
    m.max(1)
}

/// SplitMix64 finaliser over `seed` and a stream id. Used to give every
/// tree, fold and node its own independent seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
