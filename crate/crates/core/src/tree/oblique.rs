use super::{project, SplitSpec};
use crate::criteria::{gmml_weights, split_point, SplitStrategy, W_MAX};
use crate::dataset::{Label, NodeView};
use crate::error::{Error, Result};

/// Oblique test `wᵗx <= b` whose coefficients are the closed-form GMML
/// weights of the candidates (zero elsewhere). Sentinel weights are clamped
/// to ten times the largest finite candidate weight. The threshold is placed
/// on the projected values with the given strategy.
pub fn fit_oblique_node(
    node: &NodeView<'_>,
    candidates: &[usize],
    strategy: SplitStrategy,
    window: usize,
) -> Result<SplitSpec> {
    let ds = node.dataset();
    let (fw, _) = gmml_weights(node, candidates)?;
    if fw.weights.iter().all(|&w| w == 0.0) {
        return Err(Error::Degenerate);
    }
    let max_finite = fw.weights.iter().copied().filter(|&w| w < W_MAX).fold(0.0, f64::max);
    let clamp = if max_finite > 0.0 { 10.0 * max_finite } else { 1.0 };

    let mut weights = vec![0.0; ds.n_features()];
    for (&j, &w) in fw.candidate_indices.iter().zip(&fw.weights) {
        weights[j] = if w == W_MAX { clamp } else { w };
    }

    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for &i in node.indices() {
        let p = project(&weights, |j| ds.value(i, j));
        if !p.is_finite() {
            return Err(Error::Degenerate);
        }
        match ds.label(i) {
            Label::Positive => pos.push(p),
            Label::Negative => neg.push(p),
        }
    }
    let threshold = split_point(&pos, &neg, strategy, window)?;
    Ok(SplitSpec::Oblique { weights, threshold })
}
