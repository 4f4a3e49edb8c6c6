//! Axis-aligned boxes in `R^n`: `h(x) = 1` iff `lo_j <= x_j <= hi_j` for
//! every coordinate `j`.

use crate::error::{Error, Result};
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabelVector, LabeledSample, PointSet};

pub const DEFAULT_RECTANGLE_EXACT_LOSS_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub dim: usize,
    /// Nonrealizable samples up to this size get their exact minimum loss;
    /// larger ones report the bounding-box loss with `exact_loss = false`.
    pub exact_loss_cap: usize,
}

impl Rectangle {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("boxes need dimension >= 1"));
        }
        Ok(Rectangle {
            dim,
            exact_loss_cap: DEFAULT_RECTANGLE_EXACT_LOSS_CAP,
        })
    }
}

/// Predictions of the bounding box of `members` (all false when empty).
fn bbox_predictions(points: &PointSet, members: impl Iterator<Item = usize>) -> LabelVector {
    let d = points.len();
    let n = points.dim().unwrap_or(0);
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for i in members {
        for (j, &x) in points.coords(i).iter().enumerate() {
            lo[j] = lo[j].min(x);
            hi[j] = hi[j].max(x);
        }
    }
    LabelVector::new(
        (0..d)
            .map(|i| {
                points
                    .coords(i)
                    .iter()
                    .enumerate()
                    .all(|(j, &x)| lo[j] <= x && x <= hi[j])
            })
            .collect(),
    )
}

/// ERM over boxes.
///
/// Zero loss is possible iff the bounding box of the positives contains no
/// negative point. Otherwise, for small samples, the minimum is found by
/// trying the bounding box of every subset of the positives: any box can be
/// shrunk to the bounding box of the positives it contains without adding a
/// mistake.
pub fn rectangle_erm(sample: &LabeledSample<'_>, exact_loss_cap: usize) -> Result<ErmOutcome> {
    let points = sample.points();
    let positives: Vec<usize> = (0..sample.len()).filter(|&i| sample.label(i)).collect();
    let hull = bbox_predictions(points, positives.iter().copied());
    let first = ErmOutcome::from_predictions(hull, sample);
    if first.is_zero_loss() {
        return Ok(first);
    }
    if sample.len() > exact_loss_cap {
        return Ok(ErmOutcome {
            exact_loss: false,
            ..first
        });
    }

    let mut best = first;
    for mask in 0u64..(1u64 << positives.len()) {
        let chosen = positives
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i);
        let cand = ErmOutcome::from_predictions(bbox_predictions(points, chosen), sample);
        if cand.loss_numerator < best.loss_numerator {
            best = cand;
        }
    }
    Ok(best)
}

impl ErmOracle for Rectangle {
    fn domain(&self) -> Domain {
        Domain::Real { dim: self.dim }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        self.domain().check(sample.points())?;
        rectangle_erm(sample, self.exact_loss_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(pts: &[[f64; 2]], labels: &str) -> ErmOutcome {
        let pts = PointSet::from_coords(pts.iter().map(|p| p.to_vec())).unwrap();
        let s = LabeledSample::new(&pts, labels.parse().unwrap()).unwrap();
        Rectangle::new(2).unwrap().erm(&s).unwrap()
    }

    #[test]
    fn box_excludes_outer_negative() {
        assert!(run(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]], "110").is_zero_loss());
    }

    #[test]
    fn negative_inside_positive_hull() {
        let out = run(&[[0.0, 0.0], [2.0, 2.0], [1.0, 1.0]], "110");
        assert_eq!(out.loss_numerator, 1);
        assert!(out.exact_loss);
    }

    #[test]
    fn all_negative_uses_empty_box() {
        let out = run(&[[0.0, 0.0], [2.0, 2.0], [1.0, 1.0]], "000");
        assert!(out.is_zero_loss());
    }

    #[test]
    fn above_cap_reports_bounding_box_loss() {
        let pts = PointSet::from_coords(vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let s = LabeledSample::new(&pts, "101".parse().unwrap()).unwrap();
        let out = rectangle_erm(&s, 2).unwrap();
        assert_eq!(out.loss_numerator, 1);
        assert!(!out.exact_loss);
        assert!(!out.budget_exhausted);
    }
}
