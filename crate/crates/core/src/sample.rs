//! Points, labels, labeled samples, the 0-1 loss and the ERM oracle contract.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;

use crate::error::{Error, Result};

/// A binary label. `true` is the label 1.
pub type Label = bool;

/// A domain element: either a finite real vector or an index into a finite
/// domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Real(Vec<f64>),
    Index(usize),
}

impl Point {
    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Real(c) => Some(c),
            Point::Index(_) => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Point::Index(i) => Some(*i),
            Point::Real(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "#{i}"),
            Point::Real(c) => {
                write!(f, "(")?;
                for (k, x) in c.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The domain a hypothesis class is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `R^dim`.
    Real { dim: usize },
    /// `{0, ..., cardinality - 1}`.
    Finite { cardinality: usize },
}

impl Domain {
    /// Checks that every point of `points` lies in this domain.
    pub fn check(&self, points: &PointSet) -> Result<()> {
        match *self {
            Domain::Real { dim } => match points.dim() {
                Some(n) if n == dim => Ok(()),
                Some(n) => Err(Error::domain(format!(
                    "points have dimension {n}, class expects {dim}"
                ))),
                None => Err(Error::domain("index points given to a class over R^n")),
            },
            Domain::Finite { cardinality } => {
                for p in points.iter() {
                    match p {
                        Point::Index(i) if *i < cardinality => {}
                        Point::Index(i) => {
                            return Err(Error::domain(format!(
                                "index {i} outside a domain of cardinality {cardinality}"
                            )))
                        }
                        Point::Real(_) => {
                            return Err(Error::domain("real point given to a finite class"))
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// A non-empty ordered set of pairwise-distinct points of one kind.
///
/// Real points all share one dimension and have finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::contract("a point set needs at least one point"))?;
        match first {
            Point::Real(c0) => {
                let dim = c0.len();
                if dim == 0 {
                    return Err(Error::contract("real points need at least one coordinate"));
                }
                let mut seen = HashSet::with_capacity(points.len());
                for (i, p) in points.iter().enumerate() {
                    let Point::Real(c) = p else {
                        return Err(Error::contract("mixed real and index points"));
                    };
                    if c.len() != dim {
                        return Err(Error::contract(format!(
                            "point {i} has dimension {}, expected {dim}",
                            c.len()
                        )));
                    }
                    if c.iter().any(|x| !x.is_finite()) {
                        return Err(Error::contract(format!(
                            "point {i} has a non-finite coordinate"
                        )));
                    }
                    // -0.0 and 0.0 are the same point.
                    let key: Vec<u64> = c.iter().map(|x| (x + 0.0).to_bits()).collect();
                    if !seen.insert(key) {
                        return Err(Error::contract(format!("point {i} is a duplicate")));
                    }
                }
            }
            Point::Index(_) => {
                let mut seen = HashSet::with_capacity(points.len());
                for (i, p) in points.iter().enumerate() {
                    let Point::Index(ix) = p else {
                        return Err(Error::contract("mixed real and index points"));
                    };
                    if !seen.insert(*ix) {
                        return Err(Error::contract(format!("point {i} is a duplicate")));
                    }
                }
            }
        }
        Ok(PointSet { points })
    }

    /// Builds a set of real points from coordinate rows.
    pub fn from_coords<I, C>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Vec<f64>>,
    {
        Self::new(rows.into_iter().map(|c| Point::Real(c.into())).collect())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(indices.into_iter().map(Point::Index).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient dimension for real points, `None` for index points.
    pub fn dim(&self) -> Option<usize> {
        self.points[0].coords().map(<[f64]>::len)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Coordinates of point `i`. Panics on index points.
    pub(crate) fn coords(&self, i: usize) -> &[f64] {
        self.points[i].coords().expect("real point")
    }

    /// One-dimensional coordinates of every point.
    pub(crate) fn scalars(&self) -> Result<Vec<f64>> {
        match self.dim() {
            Some(1) => Ok(self.points.iter().map(|p| p.coords().unwrap()[0]).collect()),
            Some(n) => Err(Error::domain(format!(
                "expected points on the line, got dimension {n}"
            ))),
            None => Err(Error::domain(
                "expected points on the line, got index points",
            )),
        }
    }
}

/// A vector of binary labels `(y_1, ..., y_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelVector(Vec<bool>);

impl LabelVector {
    pub fn new(bits: Vec<bool>) -> Self {
        LabelVector(bits)
    }

    pub fn zeros(d: usize) -> Self {
        LabelVector(vec![false; d])
    }

    /// The labeling with rank `index` in lexicographic order over `{0,1}^d`:
    /// the label of the first point is the most significant bit.
    pub fn from_index(index: u64, d: usize) -> Self {
        debug_assert!(d <= 64);
        LabelVector((0..d).map(|i| (index >> (d - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`LabelVector::from_index`]. Requires `len() <= 64`.
    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Label {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().copied()
    }

    pub fn complement(&self) -> Self {
        LabelVector(self.0.iter().map(|b| !b).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming(&self, other: &LabelVector) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl From<Vec<bool>> for LabelVector {
    fn from(bits: Vec<bool>) -> Self {
        LabelVector(bits)
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for LabelVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::contract(format!(
                    "invalid label character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LabelVector)
    }
}

/// A point set paired with one labeling of it: the sample
/// `S = {(c_1, y_1), ..., (c_d, y_d)}`.
#[derive(Clone, Debug)]
pub struct LabeledSample<'a> {
    points: &'a PointSet,
    labels: LabelVector,
}

impl<'a> LabeledSample<'a> {
    pub fn new(points: &'a PointSet, labels: LabelVector) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::contract(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        Ok(LabeledSample { points, labels })
    }

    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn labels(&self) -> &LabelVector {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels.get(i)
    }
}

/// The 0-1 empirical loss of `predictions` on `sample`, as an exact ratio.
pub fn empirical_loss(
    predictions: &LabelVector,
    sample: &LabeledSample<'_>,
) -> Result<Ratio<usize>> {
    if predictions.len() != sample.len() {
        return Err(Error::contract(format!(
            "{} predictions for a sample of size {}",
            predictions.len(),
            sample.len()
        )));
    }
    Ok(Ratio::new(
        predictions.hamming(sample.labels()),
        sample.len(),
    ))
}

/// Result of one ERM call.
///
/// When `predictions` is present, `loss_numerator` is the Hamming distance
/// between the predictions and the sample's labels. A zero loss always
/// comes with predictions equal to the labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErmOutcome {
    pub loss_numerator: usize,
    pub sample_size: usize,
    pub predictions: Option<LabelVector>,
    /// An iterative oracle ran out of its update budget without certifying
    /// either zero loss or non-realizability.
    pub budget_exhausted: bool,
    /// `false` when a nonzero `loss_numerator` is only a lower bound (the
    /// exact minimum was not computed). Zero losses are always exact.
    pub exact_loss: bool,
}

impl ErmOutcome {
    /// Zero loss: the returned hypothesis reproduces the labels.
    pub fn realized(sample: &LabeledSample<'_>) -> Self {
        ErmOutcome {
            loss_numerator: 0,
            sample_size: sample.len(),
            predictions: Some(sample.labels().clone()),
            budget_exhausted: false,
            exact_loss: true,
        }
    }

    /// Outcome of a hypothesis with the given predictions.
    pub fn from_predictions(predictions: LabelVector, sample: &LabeledSample<'_>) -> Self {
        ErmOutcome {
            loss_numerator: predictions.hamming(sample.labels()),
            sample_size: sample.len(),
            predictions: Some(predictions),
            budget_exhausted: false,
            exact_loss: true,
        }
    }

    /// Nonzero loss reported without a hypothesis.
    pub(crate) fn unrealizable(
        loss_numerator: usize,
        exact_loss: bool,
        sample_size: usize,
    ) -> Self {
        debug_assert!(loss_numerator >= 1);
        ErmOutcome {
            loss_numerator,
            sample_size,
            predictions: None,
            budget_exhausted: false,
            exact_loss,
        }
    }

    pub fn is_zero_loss(&self) -> bool {
        self.loss_numerator == 0
    }

    pub fn loss(&self) -> Ratio<usize> {
        Ratio::new(self.loss_numerator, self.sample_size)
    }

    /// Whether the outcome satisfies its own invariants against `sample`.
    pub fn is_consistent_with(&self, sample: &LabeledSample<'_>) -> bool {
        if self.sample_size != sample.len() || self.loss_numerator > self.sample_size {
            return false;
        }
        match &self.predictions {
            Some(p) => p.len() == sample.len() && p.hamming(sample.labels()) == self.loss_numerator,
            None => self.loss_numerator > 0,
        }
    }
}

/// An empirical risk minimizer for one hypothesis class.
///
/// Completeness: if some hypothesis in the class has zero loss on the
/// sample, `erm` must report zero loss, unless it is an iterative oracle
/// that sets `budget_exhausted`. Implementations must be pure so that
/// shattering checks can call them from many threads.
pub trait ErmOracle: Sync {
    fn domain(&self) -> Domain;

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome>;

    /// Whether the class is known to be closed under `h -> 1 - h`.
    fn closed_under_complement(&self) -> bool {
        false
    }
}

impl<T: ErmOracle + ?Sized> ErmOracle for &T {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        (**self).erm(sample)
    }

    fn closed_under_complement(&self) -> bool {
        (**self).closed_under_complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(xs: &[f64]) -> PointSet {
        PointSet::from_coords(xs.iter().map(|&x| vec![x])).unwrap()
    }

    #[test]
    fn loss_of_perfect_predictor_is_zero() {
        let pts = line(&[0.1, 0.2, 0.3]);
        let labels: LabelVector = "101".parse().unwrap();
        let s = LabeledSample::new(&pts, labels.clone()).unwrap();
        assert_eq!(empirical_loss(&labels, &s).unwrap(), Ratio::new(0, 3));
    }

    #[test]
    fn loss_of_complement_is_one() {
        let pts = line(&[1.0, 2.0, 3.0, 4.0]);
        let labels: LabelVector = "0110".parse().unwrap();
        let s = LabeledSample::new(&pts, labels.clone()).unwrap();
        assert_eq!(
            empirical_loss(&labels.complement(), &s).unwrap(),
            Ratio::from_integer(1)
        );
    }

    #[test]
    fn loss_with_two_mismatches_is_half() {
        let pts = line(&[1.0, 2.0, 3.0, 4.0]);
        let s = LabeledSample::new(&pts, "0110".parse().unwrap()).unwrap();
        let pred: LabelVector = "1111".parse().unwrap();
        assert_eq!(empirical_loss(&pred, &s).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn loss_rejects_length_mismatch() {
        let pts = line(&[1.0, 2.0]);
        let s = LabeledSample::new(&pts, "01".parse().unwrap()).unwrap();
        let pred: LabelVector = "011".parse().unwrap();
        assert!(matches!(empirical_loss(&pred, &s), Err(Error::Contract(_))));
    }

    #[test]
    fn point_set_rejects_duplicates_and_bad_input() {
        assert!(PointSet::from_coords(vec![vec![0.5], vec![0.5]]).is_err());
        assert!(PointSet::from_coords(vec![vec![0.0], vec![-0.0]]).is_err());
        assert!(PointSet::from_coords(vec![vec![f64::NAN]]).is_err());
        assert!(PointSet::from_coords(vec![vec![0.0], vec![1.0, 2.0]]).is_err());
        assert!(PointSet::from_indices([3, 1, 3]).is_err());
        assert!(PointSet::new(vec![]).is_err());
        assert!(PointSet::new(vec![Point::Index(0), Point::Real(vec![1.0])]).is_err());
    }

    #[test]
    fn finite_domain_check() {
        let pts = PointSet::from_indices([0, 4]).unwrap();
        assert!(Domain::Finite { cardinality: 5 }.check(&pts).is_ok());
        assert!(matches!(
            Domain::Finite { cardinality: 4 }.check(&pts),
            Err(Error::Domain(_))
        ));
        assert!(Domain::Real { dim: 1 }.check(&pts).is_err());
    }

    #[test]
    fn label_vector_index_order() {
        assert_eq!(LabelVector::from_index(1, 2).to_string(), "01");
        assert_eq!(LabelVector::from_index(2, 2).to_string(), "10");
        assert_eq!(LabelVector::from_index(5, 3).to_index(), 5);
    }

    proptest! {
        #[test]
        fn empirical_loss_is_hamming_over_d(
            bits in proptest::collection::vec(any::<(bool, bool)>(), 1..40)
        ) {
            let d = bits.len();
            let pts = PointSet::from_indices(0..d).unwrap();
            let labels = LabelVector::new(bits.iter().map(|b| b.0).collect());
            let pred = LabelVector::new(bits.iter().map(|b| b.1).collect());
            let mismatches = bits.iter().filter(|(a, b)| a != b).count();
            let s = LabeledSample::new(&pts, labels).unwrap();
            prop_assert_eq!(empirical_loss(&pred, &s).unwrap(), Ratio::new(mismatches, d));
        }
    }
}
