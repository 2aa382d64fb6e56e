use dgmml_tree::criteria::{
    best_weighted_feature, entropy, gini, gini_reduction, gmml_derivative, gmml_objective, gmml_weights, hellinger_sq,
    ihd, info_gain, split_point, ClassCounts, SplitStrategy,
};
use dgmml_tree::dataset::stratified_kfold;
use dgmml_tree::forest::grow_forest;
use dgmml_tree::tree::partition;
use dgmml_tree::{Criterion, Dataset, ForestConfig, Label, Mtry, NodeView, TrainConfig, Tree, TreeNode};
use proptest::prelude::*;

fn labelled(rows: Vec<Vec<f64>>, mut labels: Vec<bool>) -> Dataset {
    labels[0] = true;
    labels[1] = false;
    let labels = labels.into_iter().map(|p| if p { Label::Positive } else { Label::Negative }).collect();
    Dataset::from_rows_unnamed("p", &rows, labels).unwrap()
}

/// Rows of width `d` with both classes present.
fn node(d: usize, max_n: usize) -> impl Strategy<Value = Dataset> {
    (4..=max_n).prop_flat_map(move |n| {
        (prop::collection::vec(prop::collection::vec(-50.0..50.0f64, d), n), prop::collection::vec(any::<bool>(), n))
            .prop_map(|(rows, labels)| labelled(rows, labels))
    })
}

fn transformed(ds: &Dataset, f: impl Fn(usize, f64) -> f64) -> Dataset {
    let rows: Vec<Vec<f64>> = (0..ds.n_samples()).map(|i| ds.row(i).iter().enumerate().map(|(j, &x)| f(j, x)).collect()).collect();
    Dataset::from_rows_unnamed("t", &rows, ds.labels().to_vec()).unwrap()
}

fn counts() -> impl Strategy<Value = ClassCounts> {
    (0usize..40, 0usize..40).prop_map(|(p, n)| ClassCounts::new(p, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weights_survive_affine_maps_and_negation(
        ds in node(4, 30),
        scale in prop::collection::vec(0.1..10.0f64, 4),
        shift in prop::collection::vec(-20.0..20.0f64, 4),
    ) {
        let all = [0, 1, 2, 3];
        let (w, _) = gmml_weights(&ds.view(), &all).unwrap();
        let (wa, _) = gmml_weights(&transformed(&ds, |j, x| scale[j] * x + shift[j]).view(), &all).unwrap();
        let (wn, _) = gmml_weights(&transformed(&ds, |_, x| -x).view(), &all).unwrap();
        for j in 0..4 {
            prop_assert!((wa.weights[j] - w.weights[j]).abs() <= 1e-9 * w.weights[j]);
            prop_assert_eq!(wn.weights[j], w.weights[j]);
        }
        prop_assert_eq!(best_weighted_feature(&wn).unwrap(), best_weighted_feature(&w).unwrap());
    }

    #[test]
    fn closed_form_is_a_convex_minimum(ds in node(3, 40)) {
        let (w, stats) = gmml_weights(&ds.view(), &[0, 1, 2]).unwrap();
        for (s, &wj) in stats.features.iter().zip(&w.weights) {
            let (a, b) = (s.within_scatter, s.between_scatter);
            prop_assume!(a > 0.0 && b > 0.0);
            let f0 = gmml_objective(a, b, wj);
            for eps in [0.01, 0.1, 0.5] {
                prop_assert!(gmml_objective(a, b, wj * (1.0 + eps)) >= f0);
                prop_assert!(gmml_objective(a, b, wj * (1.0 - eps)) >= f0);
                // central difference at a perturbed point
                let x = wj * (1.0 + eps);
                let h = x * 1e-6;
                let fd = (gmml_objective(a, b, x + h) - gmml_objective(a, b, x - h)) / (2.0 * h);
                let exact = gmml_derivative(a, b, x);
                prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(a), "{fd} vs {exact}");
            }
        }
    }

    #[test]
    fn thresholds_ignore_input_order(
        pos in prop::collection::vec(-100.0..100.0f64, 1..30),
        neg in prop::collection::vec(-100.0..100.0f64, 1..30),
        rot in 0usize..30,
    ) {
        let mut p2 = pos.clone();
        let mut n2 = neg.clone();
        p2.reverse();
        let r = rot % n2.len();
        n2.rotate_left(r);
        for s in SplitStrategy::ALL {
            prop_assert_eq!(split_point(&pos, &neg, s, 5).unwrap(), split_point(&p2, &n2, s, 5).unwrap());
        }
    }

    #[test]
    fn impurity_bounds_and_hellinger_symmetry(parent in counts(), lp in 0usize..40, ln in 0usize..40) {
        prop_assume!(parent.total() > 0);
        let left = ClassCounts::new(lp.min(parent.pos), ln.min(parent.neg));
        let right = ClassCounts::new(parent.pos - left.pos, parent.neg - left.neg);
        prop_assert!((0.0..=1.0).contains(&entropy(parent)));
        prop_assert!((0.0..=0.5).contains(&gini(parent)));
        prop_assert!(info_gain(parent, left, right).unwrap() >= 0.0);
        prop_assert!(gini_reduction(parent, left, right).unwrap() >= 0.0);
        prop_assert!(ihd(parent, left, right).unwrap() >= 0.0);
        if left.total() > 0 {
            let (a, b) = (left.proportions(), parent.proportions());
            prop_assert_eq!(hellinger_sq(a, b).unwrap(), hellinger_sq(b, a).unwrap());
            prop_assert_eq!(hellinger_sq(a, a).unwrap(), 0.0);
        }
    }

    #[test]
    fn folds_are_balanced_and_cover_every_row(labels in prop::collection::vec(any::<bool>(), 4..120), k in 2usize..8, seed in any::<u64>()) {
        let n = labels.len();
        prop_assume!(k <= n);
        let ds = labelled((0..n).map(|i| vec![i as f64]).collect(), labels);
        let plan = stratified_kfold(&ds, k, seed).unwrap();
        let mut seen = vec![0; n];
        let (mut sizes, mut pos_sizes) = (Vec::new(), Vec::new());
        for f in 0..k {
            let test = plan.test_indices(f);
            test.iter().for_each(|&i| seen[i] += 1);
            pos_sizes.push(test.iter().filter(|&&i| ds.label(i) == Label::Positive).count());
            sizes.push(test.len());
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        prop_assert!(pos_sizes.iter().max().unwrap() - pos_sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn every_sample_reaches_exactly_one_leaf(ds in node(3, 60), crit in 0usize..5, oblique in any::<bool>(), seed in any::<u64>()) {
        let criterion = Criterion::ALL[crit];
        let cfg = TrainConfig::new(criterion).oblique(oblique && criterion == Criterion::Dgmml).mtry(Mtry::Count(2)).seed(seed);
        let tree = Tree::fit(&ds, &cfg).unwrap();
        prop_assert_eq!(tree.stats.leaf_count, tree.stats.node_count.div_ceil(2));
        prop_assert!(tree.stats.max_depth < ds.n_samples());

        fn leaves(node: &TreeNode, view: NodeView<'_>, out: &mut usize) {
            match node {
                TreeNode::Leaf { counts, .. } => {
                    assert_eq!(counts.total(), view.len());
                    *out += view.len();
                }
                TreeNode::Split { split, left, right } => {
                    let (l, r) = partition(&view, split);
                    assert!(!l.is_empty() && !r.is_empty());
                    leaves(left, l, out);
                    leaves(right, r, out);
                }
            }
        }
        let mut total = 0;
        leaves(&tree.root, ds.view(), &mut total);
        prop_assert_eq!(total, ds.n_samples());
        prop_assert_eq!(Tree::fit(&ds, &cfg).unwrap().root, tree.root);
    }

    #[test]
    fn forest_votes_sum_to_tree_count(ds in node(3, 40), trees in 1usize..8, seed in any::<u64>()) {
        let forest = grow_forest(&ds, &ForestConfig::default().n_trees(trees).seed(seed)).unwrap();
        for i in 0..ds.n_samples() {
            let (neg, pos) = forest.votes(&ds.row(i)).unwrap();
            prop_assert_eq!(neg + pos, trees);
        }
    }
}
