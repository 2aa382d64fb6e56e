//! Stratified 10-fold cross-validation of every criterion on every bundled
//! dataset, written as a CSV report.
//!
//! ```bash
//! cargo run --release --example cross_validation
//! ```

use dgmml_tree::bench::{cv_table, run_cv, CvOptions, Format};
use dgmml_tree::dataset::load_csv;
use dgmml_tree::{Criterion, LabelColumn, ModelSpec, Mtry, TrainConfig};

fn main() -> dgmml_tree::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let mut reports = Vec::new();
    for name in ["breast_cancer", "diabetes", "haberman"] {
        let ds = load_csv(format!("{dir}/{name}.csv"), &LabelColumn::Last)?;
        for criterion in Criterion::ALL {
            let spec = ModelSpec::Tree(TrainConfig::new(criterion).mtry(Mtry::Sqrt));
            reports.push(run_cv(&ds, &spec, &CvOptions::new(10, 42).repetitions(1))?);
        }
    }
    print!("{}", cv_table(&reports, true).render(Format::Csv));
    Ok(())
}
