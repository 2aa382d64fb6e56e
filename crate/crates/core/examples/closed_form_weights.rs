//! Closed-form feature weights on a small node, and the feature they pick.
//!
//! ```bash
//! cargo run --example closed_form_weights
//! ```

use dgmml_tree::criteria::{best_weighted_feature, gmml_objective, gmml_weights};
use dgmml_tree::{Dataset, Label};

fn main() -> dgmml_tree::Result<()> {
    // feature 0 separates the classes, feature 1 is mostly noise, feature 2 is constant
    let rows = vec![
        vec![0.0, 3.0, 1.0],
        vec![2.0, 1.0, 1.0],
        vec![1.0, 4.0, 1.0],
        vec![4.0, 2.0, 1.0],
        vec![6.0, 5.0, 1.0],
        vec![5.0, 0.0, 1.0],
    ];
    let labels = [1, 1, 1, -1, -1, -1].iter().map(|&l| Label::from_i8(l).unwrap()).collect();
    let ds = Dataset::from_rows_unnamed("toy", &rows, labels)?;

    let (weights, stats) = gmml_weights(&ds.view(), &[0, 1, 2])?;
    for (s, w) in stats.features.iter().zip(&weights.weights) {
        println!(
            "x{}: means {:+.3} / {:+.3}  within {:.3}  between {:.3}  weight {:.4}  objective {:.4}",
            s.feature,
            s.mean_pos,
            s.mean_neg,
            s.within_scatter,
            s.between_scatter,
            w,
            if *w > 0.0 { gmml_objective(s.within_scatter, s.between_scatter, *w) } else { 0.0 },
        );
    }
    println!("split feature: x{}", best_weighted_feature(&weights)?);
    Ok(())
}
