//! Seeded synthetic binary datasets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};

/// Two unit-variance Gaussian classes of (nearly) equal size. The first
/// `informative` features have class means `±shift/2`; the rest are noise.
pub fn gaussian_classes(n: usize, d: usize, informative: usize, shift: f64, seed: u64) -> Result<Dataset> {
    if n < 2 || d < 1 || informative > d {
        return Err(Error::Config(format!("bad synthetic shape n={n} d={d} informative={informative}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<Label> = (0..n).map(|i| if i % 2 == 0 { Label::Positive } else { Label::Negative }).collect();
    let columns = (0..d)
        .map(|j| {
            labels
                .iter()
                .map(|&l| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    if j < informative { z + l.as_i8() as f64 * shift / 2.0 } else { z }
                })
                .collect()
        })
        .collect();
    let names = (0..d).map(|j| format!("x{j}")).collect();
    Dataset::from_columns(format!("gauss_n{n}_d{d}"), columns, labels, names)
}

/// Gaussian noise in `d` features except one, chosen uniformly, whose class
/// means differ by `shift`. Returns the dataset and the planted index.
pub fn planted_feature(n: usize, d: usize, shift: f64, seed: u64) -> Result<(Dataset, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = rng.gen_range(0..d.max(1));
    let base = gaussian_classes(n, d, 1, shift, rng.gen())?;
    // move the informative column to the planted position
    let mut columns: Vec<Vec<f64>> = (0..d).map(|j| base.column(j).to_vec()).collect();
    columns.swap(0, planted);
    let names = (0..d).map(|j| format!("x{j}")).collect();
    let ds = Dataset::from_columns(format!("planted_n{n}_d{d}"), columns, base.labels().to_vec(), names)?;
    Ok((ds, planted))
}
