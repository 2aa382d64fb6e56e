//! Features ranked by weight next to the Gini impurity left after splitting
//! on each, for the breast cancer data.
//!
//! ```bash
//! cargo run --example weight_vs_impurity
//! ```

use dgmml_tree::bench::weight_vs_impurity;
use dgmml_tree::dataset::load_csv;
use dgmml_tree::{LabelColumn, SplitStrategy};

fn main() -> dgmml_tree::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/breast_cancer.csv");
    let ds = load_csv(path, &LabelColumn::Last)?;
    for row in weight_vs_impurity(&ds, SplitStrategy::ClosestMeans, 5)? {
        let bar = "#".repeat((row.post_split_impurity * 100.0).round() as usize);
        println!("{:>2} {:<24} w={:.5}  gini={:.4} {bar}", row.rank, row.name, row.weight, row.post_split_impurity);
    }
    Ok(())
}
