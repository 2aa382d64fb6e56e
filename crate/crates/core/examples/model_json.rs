//! Save a fitted forest as a JSON model document and load it back.
//!
//! ```bash
//! cargo run --example model_json
//! ```

use dgmml_tree::dataset::load_csv;
use dgmml_tree::{ForestConfig, LabelColumn, ModelDocument, ModelSpec, TrainConfig};

fn main() -> dgmml_tree::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/haberman.csv");
    let ds = load_csv(path, &LabelColumn::Last)?;
    let spec = ModelSpec::Forest(ForestConfig::new(TrainConfig::default().oblique(true)).n_trees(5).seed(1));
    let doc = ModelDocument::new(spec.fit(&ds)?, &ds);

    let text = doc.to_json()?;
    println!("{} bytes of JSON, starts {}", text.len(), &text[..120.min(text.len())]);

    let back = ModelDocument::from_json(&text)?;
    assert_eq!(back.to_json()?, text);
    let same = back.model.predict_dataset(&ds)? == doc.model.predict_dataset(&ds)?;
    println!("reloaded model agrees on every row: {same}");
    println!("row 0 predicted as {:?}", back.label_text(back.model.predict(&ds.row(0))?));
    Ok(())
}
