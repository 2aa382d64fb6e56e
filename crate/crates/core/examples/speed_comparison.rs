//! Training time of each criterion on two synthetic Gaussian classes.
//!
//! ```bash
//! cargo run --release --example speed_comparison
//! ```

use dgmml_tree::bench::{bench_speed, synthetic, CvOptions, Format};
use dgmml_tree::{Criterion, Mtry, TrainConfig};

fn main() -> dgmml_tree::Result<()> {
    for n in [1_000, 10_000] {
        let ds = synthetic::gaussian_classes(n, 50, 5, 1.0, 11)?;
        let base = TrainConfig::default().mtry(Mtry::Sqrt);
        let table = bench_speed(&ds, &Criterion::ALL, &base, &CvOptions::new(5, 11).repetitions(3))?;
        print!("{}", table.table(true).render(Format::Csv));
    }
    Ok(())
}
