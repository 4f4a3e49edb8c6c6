//! Exact VC dimension of a finite class by enumerating column subsets.

use crate::classes::ConceptMatrix;
use crate::error::{Error, Result};
use crate::parallel;

/// `C(n, k)`, saturating at `u64::MAX`.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub(crate) fn unrank_combination(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut c = 0usize;
    for slot in 0..k {
        loop {
            // Subsets that put `c` in this slot.
            let with_c = binomial((n - c - 1) as u64, (k - slot - 1) as u64);
            if rank < with_c {
                break;
            }
            rank -= with_c;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

/// Whether the distinct rows, restricted to `cols`, show all `2^d`
/// patterns. Rows must already be deduplicated.
fn packed_shatters(rows: &[u64], cols: &[usize]) -> bool {
    let d = cols.len();
    if d >= 64 || rows.len() < 1usize << d {
        return false;
    }
    let pack = |r: u64| {
        cols.iter()
            .enumerate()
            .fold(0u64, |acc, (k, &c)| acc | (r >> c & 1) << k)
    };
    let need = 1u64 << d;
    if d <= 20 {
        let mut bitmap = vec![0u64; (need as usize).div_ceil(64)];
        let mut distinct = 0u64;
        for &r in rows {
            let p = pack(r);
            let (w, b) = ((p / 64) as usize, p % 64);
            if bitmap[w] >> b & 1 == 0 {
                bitmap[w] |= 1 << b;
                distinct += 1;
                if distinct == need {
                    return true;
                }
            }
        }
        false
    } else {
        let distinct: std::collections::HashSet<u64> = rows.iter().map(|&r| pack(r)).collect();
        distinct.len() as u64 == need
    }
}

fn first_shattered(rows: &[u64], n_cols: usize, d: usize, workers: usize) -> Option<Vec<usize>> {
    let total = binomial(n_cols as u64, d as u64);
    parallel::find_first(total, workers, |rank| {
        let cols = unrank_combination(n_cols, d, rank);
        packed_shatters(rows, &cols).then_some(cols)
    })
    .map(|(_, cols)| cols)
}

/// Exact VC dimension of the class given by `matrix`.
pub fn exact_vcdim_matrix(matrix: &ConceptMatrix) -> usize {
    exact_vcdim_matrix_with_workers(matrix, 1)
}

/// [`exact_vcdim_matrix`] with column subsets split across `workers` threads.
///
/// Sizes are tried in increasing order; once no `d`-subset is shattered,
/// no larger subset can be, so the search stops.
pub fn exact_vcdim_matrix_with_workers(matrix: &ConceptMatrix, workers: usize) -> usize {
    let distinct = matrix.dedup();
    let rows = distinct.packed_rows();
    // 2^d patterns need at least 2^d distinct rows.
    let max_d = (usize::BITS - 1 - rows.len().leading_zeros()) as usize;
    let max_d = max_d.min(matrix.col_count());
    let mut vc = 0;
    for d in 1..=max_d {
        if first_shattered(rows, matrix.col_count(), d, workers.max(1)).is_none() {
            break;
        }
        vc = d;
    }
    vc
}

/// Lexicographically first shattered `d`-subset of columns, if any.
pub fn exact_shattered_witness(matrix: &ConceptMatrix, d: usize) -> Result<Option<Vec<usize>>> {
    if d == 0 || d > matrix.col_count() {
        return Err(Error::contract(format!(
            "d must be in 1..={}, got {d}",
            matrix.col_count()
        )));
    }
    let distinct = matrix.dedup();
    Ok(first_shattered(
        distinct.packed_rows(),
        matrix.col_count(),
        d,
        1,
    ))
}
