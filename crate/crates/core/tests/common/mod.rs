//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the search, ranking or weight code it is used to check.

#![allow(dead_code)]

use dgmml_tree::criteria::{gain_ratio, gini_reduction, ihd, info_gain, ClassCounts, SplitCriterion};
use dgmml_tree::{Dataset, Label};
use rand::Rng;

/// Random labelled rows with both classes present. With `grid > 0` values
/// are integers in `0..grid` so ties are common.
pub fn random_node<R: Rng>(rng: &mut R, n: usize, d: usize, grid: u32) -> Dataset {
    assert!(n >= 2);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..d)
                .map(|_| if grid > 0 { rng.gen_range(0..grid) as f64 } else { rng.gen_range(-10.0..10.0) })
                .collect()
        })
        .collect();
    let mut labels: Vec<Label> = (0..n).map(|_| if rng.gen_bool(0.5) { Label::Positive } else { Label::Negative }).collect();
    labels[0] = Label::Positive;
    labels[1] = Label::Negative;
    Dataset::from_rows_unnamed("random", &rows, labels).unwrap()
}

/// `(within, between)` scatter of one feature over the given rows.
pub fn scatter(ds: &Dataset, rows: &[usize], j: usize) -> (f64, f64) {
    let (mut p, mut q) = (Vec::new(), Vec::new());
    for &i in rows {
        if ds.label(i) == Label::Positive { p.push(ds.value(i, j)) } else { q.push(ds.value(i, j)) }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mp, mq) = (mean(&p), mean(&q));
    let within = p.iter().map(|x| (x - mp).powi(2)).sum::<f64>() + q.iter().map(|x| (x - mq).powi(2)).sum::<f64>();
    (within, (mp - mq).powi(2))
}

/// Minimiser of `w·within + between/w` over `w ∈ (0, upper]` by
/// golden-section search on `ln w`.
pub fn golden_section_weight(within: f64, between: f64, upper: f64) -> f64 {
    let f = |u: f64| {
        let w = u.exp();
        w * within + between / w
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = ((1e-12f64).ln(), upper.ln());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..400 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    ((a + b) / 2.0).exp()
}

pub fn counts_of(ds: &Dataset, rows: impl IntoIterator<Item = usize>) -> ClassCounts {
    ClassCounts::from_labels(rows.into_iter().map(|i| ds.label(i)))
}

pub fn criterion_value(c: SplitCriterion, parent: ClassCounts, left: ClassCounts, right: ClassCounts) -> f64 {
    match c {
        SplitCriterion::InfoGain => info_gain(parent, left, right),
        SplitCriterion::GainRatio => gain_ratio(parent, left, right),
        SplitCriterion::GiniReduction => gini_reduction(parent, left, right),
        SplitCriterion::Ihd => ihd(parent, left, right),
    }
    .unwrap()
}

/// Best `(feature, threshold, score)` over every feature and every midpoint
/// of consecutive distinct values, counting each side by a full scan.
/// Ties keep the earliest candidate in (feature, threshold) order.
pub fn brute_force_split(ds: &Dataset, rows: &[usize], c: SplitCriterion, min_child: usize) -> Option<(usize, f64, f64)> {
    let parent = counts_of(ds, rows.iter().copied());
    let mut best: Option<(usize, f64, f64)> = None;
    for j in 0..ds.n_features() {
        let mut values: Vec<f64> = rows.iter().map(|&i| ds.value(i, j)).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for w in values.windows(2) {
            let t = midpoint(w[0], w[1]);
            let left: Vec<usize> = rows.iter().copied().filter(|&i| ds.value(i, j) <= t).collect();
            let right: Vec<usize> = rows.iter().copied().filter(|&i| ds.value(i, j) > t).collect();
            if left.len() < min_child || right.len() < min_child {
                continue;
            }
            let score = criterion_value(c, parent, counts_of(ds, left), counts_of(ds, right));
            if best.is_none_or(|(_, _, s)| score > s) {
                best = Some((j, t, score));
            }
        }
    }
    best
}

/// Threshold between consecutive distinct values `a < b` with `a <= t < b`.
pub fn midpoint(a: f64, b: f64) -> f64 {
    let m = a / 2.0 + b / 2.0;
    if m >= a && m < b { m } else { a }
}
