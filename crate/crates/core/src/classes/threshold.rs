//! Thresholds on the line: `h_a(x) = 1` iff `x <= a`, with `a` ranging over
//! the extended reals.

use crate::error::Result;
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabelVector, LabeledSample};

/// Sample indices sorted by coordinate.
pub(super) fn sorted_order(xs: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    order
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Threshold;

/// Exact ERM over thresholds: scans the `d + 1` cut positions in sorted
/// order, the first `k` sorted points predicted 1.
pub fn threshold_erm(sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
    let xs = sample.points().scalars()?;
    let order = sorted_order(&xs);
    let d = xs.len();

    // Cut k = 0: everything predicted 0, so every 1 is a mistake.
    let mut loss = sample.labels().count_ones();
    let mut best = (loss, 0);
    for (k, &i) in order.iter().enumerate() {
        // Point i moves to the "predict 1" side.
        if sample.label(i) {
            loss -= 1;
        } else {
            loss += 1;
        }
        if loss < best.0 {
            best = (loss, k + 1);
        }
    }

    let mut pred = vec![false; d];
    for &i in &order[..best.1] {
        pred[i] = true;
    }
    Ok(ErmOutcome::from_predictions(LabelVector::new(pred), sample))
}

impl ErmOracle for Threshold {
    fn domain(&self) -> Domain {
        Domain::Real { dim: 1 }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        threshold_erm(sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::sample::PointSet;

    fn run(xs: &[f64], labels: &str) -> ErmOutcome {
        let pts = PointSet::from_coords(xs.iter().map(|&x| vec![x])).unwrap();
        threshold_erm(&LabeledSample::new(&pts, labels.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn singleton_is_realizable() {
        assert!(run(&[0.3], "1").is_zero_loss());
        assert!(run(&[0.3], "0").is_zero_loss());
    }

    #[test]
    fn decreasing_pair_is_realizable() {
        assert!(run(&[0.25, 0.75], "10").is_zero_loss());
    }

    #[test]
    fn increasing_pair_costs_one() {
        let out = run(&[0.25, 0.75], "01");
        assert_eq!(out.loss_numerator, 1);
        assert!(out.exact_loss);
    }

    #[test]
    fn unsorted_input() {
        let out = run(&[0.9, 0.1, 0.5], "011");
        assert!(out.is_zero_loss());
        assert_eq!(out.predictions.unwrap().to_string(), "011");
    }

    #[test]
    fn rejects_planar_points() {
        let pts = PointSet::from_coords(vec![vec![0.0, 1.0]]).unwrap();
        let s = LabeledSample::new(&pts, "1".parse().unwrap()).unwrap();
        assert!(matches!(threshold_erm(&s), Err(Error::Domain(_))));
    }
}
