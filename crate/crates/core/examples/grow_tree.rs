//! Grow a dGMML tree on the breast cancer data and compare it with the
//! exhaustive-search baselines on the training set.
//!
//! ```bash
//! cargo run --release --example grow_tree
//! ```

use dgmml_tree::dataset::load_csv;
use dgmml_tree::{Criterion, LabelColumn, Mtry, TrainConfig, Tree};

fn main() -> dgmml_tree::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/breast_cancer.csv");
    let ds = load_csv(path, &LabelColumn::Last)?;
    println!("{}: n={} d={}", ds.name(), ds.n_samples(), ds.n_features());

    for criterion in Criterion::ALL {
        let cfg = TrainConfig::new(criterion).mtry(Mtry::Sqrt).seed(7);
        let tree = Tree::fit(&ds, &cfg)?;
        let predicted = tree.predict_dataset(&ds)?;
        let correct = predicted.iter().zip(ds.labels()).filter(|(p, t)| p == t).count();
        println!(
            "{:<10} nodes {:>4}  leaves {:>4}  depth {:>2}  train acc {:.4}  {:.3} ms",
            criterion.as_str(),
            tree.stats.node_count,
            tree.stats.leaf_count,
            tree.stats.max_depth,
            correct as f64 / ds.n_samples() as f64,
            tree.train_time_ms,
        );
    }
    Ok(())
}
