#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcdim_core::ConceptMatrix;

/// Random matrix with 1..=max_rows rows and 1..=max_cols columns.
pub fn random_matrix(seed: u64, max_rows: usize, max_cols: usize) -> ConceptMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = rng.gen_range(1..=max_cols);
    let rows = rng.gen_range(1..=max_rows);
    // Vary density so that both rich and degenerate classes show up.
    let p: f64 = rng.gen_range(0.1..0.9);
    ConceptMatrix::new(
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(p)).collect())
            .collect(),
    )
    .unwrap()
}

/// Every nonempty subset of `0..n`, as sorted index lists.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}
