//! Axis-parallel against oblique dGMML trees on data whose class boundary
//! is a diagonal line.
//!
//! ```bash
//! cargo run --release --example oblique_tree
//! ```

use dgmml_tree::bench::{run_cv, CvOptions};
use dgmml_tree::{Dataset, Label, ModelSpec, SplitSpec, TrainConfig, Tree, TreeNode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dgmml_tree::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows: Vec<Vec<f64>> = (0..600).map(|_| vec![rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)]).collect();
    let labels = rows.iter().map(|r| if r[0] + r[1] < 10.0 { Label::Positive } else { Label::Negative }).collect();
    let ds = Dataset::from_rows_unnamed("diagonal", &rows, labels)?;

    let oblique = Tree::fit(&ds, &TrainConfig::default().oblique(true))?;
    if let TreeNode::Split { split: SplitSpec::Oblique { weights, threshold }, .. } = &oblique.root {
        println!("root test: {:.4}·x0 + {:.4}·x1 <= {:.4}", weights[0], weights[1], threshold);
    }

    for oblique in [false, true] {
        let spec = ModelSpec::Tree(TrainConfig::default().oblique(oblique));
        let report = run_cv(&ds, &spec, &CvOptions::new(10, 1).repetitions(1))?;
        let size = Tree::fit(&ds, spec.tree_config())?.stats.node_count;
        println!("{:<10} 10-fold accuracy {:.4}  full-data nodes {size}", spec.descriptor(), report.mean_accuracy);
    }
    Ok(())
}
