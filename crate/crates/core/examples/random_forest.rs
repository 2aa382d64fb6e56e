//! Forests of 20 trees against single trees, with the bootstrap and
//! subspace ablations.
//!
//! ```bash
//! cargo run --release --example random_forest
//! ```

use dgmml_tree::bench::{run_cv, CvOptions};
use dgmml_tree::dataset::load_csv;
use dgmml_tree::{ForestConfig, LabelColumn, ModelSpec, Mtry, TrainConfig};

fn main() -> dgmml_tree::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/haberman.csv");
    let ds = load_csv(path, &LabelColumn::Last)?;
    let tree = TrainConfig::default().mtry(Mtry::Sqrt);
    let specs = [
        ModelSpec::Tree(tree.clone()),
        ModelSpec::Forest(ForestConfig::new(tree.clone())),
        ModelSpec::Forest(ForestConfig::new(tree.clone()).bootstrap(false)),
        ModelSpec::Forest(ForestConfig::new(tree.clone()).subspaces(false)),
    ];
    let labels = ["single tree", "forest", "forest, no bootstrap", "forest, no subspaces"];
    for (spec, label) in specs.iter().zip(labels) {
        let r = run_cv(&ds, spec, &CvOptions::new(10, 5).repetitions(1))?;
        println!("{label:<22} {:.4}  ({:.3} ms per fold)", r.mean_accuracy, r.train_time_ms);
    }

    let forest = ForestConfig::new(tree).seed(5).n_trees(21);
    let fitted = dgmml_tree::forest::grow_forest(&ds, &forest)?;
    let (neg, pos) = fitted.votes(&ds.row(0))?;
    println!("votes for row 0: {neg} negative, {pos} positive");
    Ok(())
}
