//! Deciding whether a class shatters a point set.
//!
//! A class shatters `C = {c_1, ..., c_d}` iff the ERM oracle reaches zero
//! empirical loss on `zip(C, y)` for every labeling `y` in `{0,1}^d`. The
//! labelings are scanned in lexicographic order and the scan stops at the
//! first one the oracle cannot realize.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::classes::ConceptMatrix;
use crate::error::{Error, Result};
use crate::parallel;
use crate::sample::{ErmOracle, ErmOutcome, LabelVector, LabeledSample, PointSet};

/// Largest point set whose labelings can be indexed by a `u64`.
pub const MAX_SHATTER_SIZE: usize = 62;

/// All `2^d` labelings in lexicographic order, the first point's label
/// being the most significant position.
pub fn enumerate_labelings(d: usize) -> Result<impl Iterator<Item = LabelVector>> {
    if d == 0 || d > MAX_SHATTER_SIZE {
        return Err(Error::contract(format!(
            "labelings need 1 <= d <= {MAX_SHATTER_SIZE}, got {d}"
        )));
    }
    Ok((0..1u64 << d).map(move |k| LabelVector::from_index(k, d)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterOptions {
    /// Worker threads for scanning labelings.
    pub workers: usize,
    /// Only check labelings whose first label is 0, relying on the class
    /// being closed under complement. Has no effect unless the class itself
    /// reports [`ErmOracle::closed_under_complement`].
    pub assume_complement_closed: bool,
}

impl Default for ShatterOptions {
    fn default() -> Self {
        ShatterOptions {
            workers: 1,
            assume_complement_closed: false,
        }
    }
}

impl ShatterOptions {
    pub fn with_workers(workers: usize) -> Self {
        ShatterOptions {
            workers: workers.max(1),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct ShatterVerdict {
    pub shattered: bool,
    /// Lexicographically smallest labeling the oracle could not realize.
    pub witness: Option<LabelVector>,
    /// ERM calls a sequential scan makes: `witness rank + 1`, or every
    /// labeling when shattered. Independent of the worker count.
    pub erm_calls: u64,
    /// The "not shattered" verdict rests on an oracle that ran out of
    /// budget rather than proving the witness unrealizable.
    pub unresolved: bool,
    pub elapsed: Duration,
}

impl ShatterVerdict {
    /// Verdict fields without timing, for comparisons.
    pub fn key(&self) -> (bool, Option<&LabelVector>, u64, bool) {
        (
            self.shattered,
            self.witness.as_ref(),
            self.erm_calls,
            self.unresolved,
        )
    }
}

/// Runs the shattering test for `class` on `points`.
pub fn shatters<O: ErmOracle + ?Sized>(
    class: &O,
    points: &PointSet,
    options: &ShatterOptions,
) -> Result<ShatterVerdict> {
    let start = Instant::now();
    let d = points.len();
    if d > MAX_SHATTER_SIZE {
        return Err(Error::contract(format!(
            "cannot enumerate labelings of {d} points"
        )));
    }
    class.domain().check(points)?;

    let halve = options.assume_complement_closed && class.closed_under_complement();
    let total = if halve { 1u64 << (d - 1) } else { 1u64 << d };

    let first_failure = parallel::find_first(total, options.workers, |k| {
        let labels = LabelVector::from_index(k, d);
        let sample = LabeledSample::new(points, labels).expect("lengths match");
        match class.erm(&sample) {
            Ok(out) if out.is_zero_loss() => check_certificate(&out, &sample).err().map(Err),
            Ok(out) => Some(Ok(out)),
            Err(e) => Some(Err(e)),
        }
    });

    let elapsed = start.elapsed();
    match first_failure {
        None => Ok(ShatterVerdict {
            shattered: true,
            witness: None,
            erm_calls: total,
            unresolved: false,
            elapsed,
        }),
        Some((k, Ok(out))) => Ok(ShatterVerdict {
            shattered: false,
            witness: Some(LabelVector::from_index(k, d)),
            erm_calls: k + 1,
            unresolved: out.budget_exhausted,
            elapsed,
        }),
        Some((k, Err(e))) => Err(Error::OracleAt {
            labeling: LabelVector::from_index(k, d),
            source: Box::new(e),
        }),
    }
}

fn check_certificate(out: &ErmOutcome, sample: &LabeledSample<'_>) -> Result<()> {
    match &out.predictions {
        Some(p) if p == sample.labels() => Ok(()),
        _ => Err(Error::Oracle(
            "zero loss reported without predictions equal to the labels".into(),
        )),
    }
}

/// Reference shattering test for a finite class: `columns` is shattered iff
/// the rows restricted to it show all `2^d` patterns.
pub fn shatters_matrix_reference(matrix: &ConceptMatrix, columns: &[usize]) -> Result<bool> {
    let mut seen_cols = HashSet::new();
    for &c in columns {
        if c >= matrix.col_count() {
            return Err(Error::domain(format!(
                "column {c} out of range for a matrix with {} columns",
                matrix.col_count()
            )));
        }
        if !seen_cols.insert(c) {
            return Err(Error::contract(format!("column {c} listed twice")));
        }
    }
    let d = columns.len();
    if d >= usize::BITS as usize - 1 {
        return Ok(false);
    }
    let patterns: HashSet<Vec<bool>> = (0..matrix.row_count())
        .map(|r| columns.iter().map(|&c| matrix.get(r, c)).collect())
        .collect();
    Ok(patterns.len() == 1usize << d)
}
