//! A fitted tree or forest, the spec that produces one, and the JSON model
//! document the CLI reads and writes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Label, NodeView};
use crate::error::{Error, Result};
use crate::forest::{grow_forest_view, Forest, ForestConfig};
use crate::tree::{Criterion, TrainConfig, Tree};

/// What to train: a single tree or a forest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Tree(TrainConfig),
    Forest(ForestConfig),
}

impl ModelSpec {
    pub fn tree_config(&self) -> &TrainConfig {
        match self {
            ModelSpec::Tree(c) => c,
            ModelSpec::Forest(f) => &f.tree_config,
        }
    }

    pub fn criterion(&self) -> Criterion {
        self.tree_config().criterion
    }

    pub fn n_trees(&self) -> Option<usize> {
        match self {
            ModelSpec::Tree(_) => None,
            ModelSpec::Forest(f) => Some(f.n_trees),
        }
    }

    /// Short name such as `dgmml-dt`, `dgmml-mdt`, `gini-rf`.
    pub fn descriptor(&self) -> String {
        let c = self.tree_config();
        let shape = if c.oblique { "m" } else { "" };
        let kind = if self.n_trees().is_some() { "rf" } else { "dt" };
        format!("{}-{shape}{kind}", c.criterion)
    }

    /// The same spec with its seed replaced.
    pub fn with_seed(&self, seed: u64) -> ModelSpec {
        match self {
            ModelSpec::Tree(c) => ModelSpec::Tree(c.clone().seed(seed)),
            ModelSpec::Forest(f) => ModelSpec::Forest(f.clone().seed(seed)),
        }
    }

    pub fn fit(&self, ds: &Dataset) -> Result<Model> {
        self.fit_view(&ds.view())
    }

    pub fn fit_view(&self, view: &NodeView<'_>) -> Result<Model> {
        match self {
            ModelSpec::Tree(c) => Tree::fit_view(view, c).map(Model::Tree),
            ModelSpec::Forest(f) => grow_forest_view(view, f).map(Model::Forest),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Tree(Tree),
    Forest(Forest),
}

impl Model {
    pub fn d(&self) -> usize {
        match self {
            Model::Tree(t) => t.d,
            Model::Forest(f) => f.d,
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        match self {
            Model::Tree(t) => t.predict(x),
            Model::Forest(f) => f.predict(x),
        }
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<Label>> {
        match self {
            Model::Tree(t) => t.predict_dataset(ds),
            Model::Forest(f) => f.predict_dataset(ds),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Model::Tree(t) => t.validate(),
            Model::Forest(f) => f.validate(),
        }
    }
}

/// A saved model with the column and label names of its training data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub library: String,
    pub feature_names: Vec<String>,
    /// Original label text for `-1` and `+1`, when the data had any.
    pub label_names: Option<[String; 2]>,
    pub model: Model,
}

impl ModelDocument {
    pub fn new(model: Model, ds: &Dataset) -> ModelDocument {
        ModelDocument {
            library: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            feature_names: ds.feature_names().to_vec(),
            label_names: ds.label_names().cloned(),
            model,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parses and validates a document. Nesting depth is not limited, so
    /// deep unpruned trees load.
    pub fn from_json(text: &str) -> Result<ModelDocument> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let doc = ModelDocument::deserialize(&mut de)?;
        de.end()?;
        if doc.feature_names.len() != doc.model.d() {
            return Err(Error::Contract(format!(
                "model has {} features but {} feature names",
                doc.model.d(),
                doc.feature_names.len()
            )));
        }
        doc.model.validate()?;
        Ok(doc)
    }

    /// Text for a label: the original class name when known, else `-1`/`1`.
    pub fn label_text(&self, label: Label) -> String {
        match &self.label_names {
            Some(names) => names[(label == Label::Positive) as usize].clone(),
            None => label.as_i8().to_string(),
        }
    }
}
