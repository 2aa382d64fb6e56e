//! Cross-validated accuracy of the three threshold rules over the bundled
//! datasets.
//!
//! ```bash
//! cargo run --release --example split_strategies
//! ```

use dgmml_tree::bench::{compare_strategies, CvOptions};
use dgmml_tree::dataset::load_csv;
use dgmml_tree::{LabelColumn, Mtry, TrainConfig};

fn main() -> dgmml_tree::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let names = ["breast_cancer", "diabetes", "german_credit", "haberman", "spectf"];
    let datasets =
        names.iter().map(|n| load_csv(format!("{dir}/{n}.csv"), &LabelColumn::Last)).collect::<Result<Vec<_>, _>>()?;
    let rows = compare_strategies(&datasets, &TrainConfig::default().mtry(Mtry::Sqrt), &CvOptions::new(10, 42).repetitions(1))?;
    for row in rows {
        let per: Vec<String> = row.accuracies.iter().map(|a| format!("{a:.3}")).collect();
        println!("{:<14} mean {:.4}  [{}]", row.strategy.as_str(), row.mean_accuracy, per.join(", "));
    }
    Ok(())
}
