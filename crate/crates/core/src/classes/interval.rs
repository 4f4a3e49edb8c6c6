//! Closed intervals on the line: `h_{a,b}(x) = 1` iff `a <= x <= b`.

use super::threshold::sorted_order;
use crate::error::Result;
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabelVector, LabeledSample};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Interval;

/// Exact ERM over intervals. An interval selects a contiguous block of the
/// sorted points (possibly empty), so the `O(d^2)` blocks are scanned with
/// prefix counts.
pub fn interval_erm(sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
    let xs = sample.points().scalars()?;
    let order = sorted_order(&xs);
    let d = xs.len();

    // ones[k] = number of label-1 points among the first k sorted points.
    let mut ones = vec![0usize; d + 1];
    for (k, &i) in order.iter().enumerate() {
        ones[k + 1] = ones[k] + sample.label(i) as usize;
    }
    let total_ones = ones[d];

    // Empty interval first.
    let mut best = (total_ones, 0, 0);
    for lo in 0..d {
        for hi in lo + 1..=d {
            let inside_ones = ones[hi] - ones[lo];
            let inside_zeros = (hi - lo) - inside_ones;
            let loss = (total_ones - inside_ones) + inside_zeros;
            if loss < best.0 {
                best = (loss, lo, hi);
            }
        }
    }

    let mut pred = vec![false; d];
    for &i in &order[best.1..best.2] {
        pred[i] = true;
    }
    Ok(ErmOutcome::from_predictions(LabelVector::new(pred), sample))
}

impl ErmOracle for Interval {
    fn domain(&self) -> Domain {
        Domain::Real { dim: 1 }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        interval_erm(sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::PointSet;

    fn run(xs: &[f64], labels: &str) -> ErmOutcome {
        let pts = PointSet::from_coords(xs.iter().map(|&x| vec![x])).unwrap();
        interval_erm(&LabeledSample::new(&pts, labels.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn middle_point_alone() {
        assert!(run(&[1.0, 2.0, 3.0], "010").is_zero_loss());
    }

    #[test]
    fn gap_in_positives_costs_one() {
        let out = run(&[1.0, 2.0, 3.0], "101");
        assert_eq!(out.loss_numerator, 1);
    }

    #[test]
    fn covering_both() {
        assert!(run(&[1.0, 2.0], "11").is_zero_loss());
    }

    #[test]
    fn all_zero_uses_empty_interval() {
        let out = run(&[4.0, -1.0, 2.0], "000");
        assert!(out.is_zero_loss());
    }
}
