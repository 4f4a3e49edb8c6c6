//! Built-in hypothesis classes and their ERM oracles.

mod finite;
mod halfspace;
mod interval;
mod rectangle;
pub(crate) mod simplex;
mod threshold;

use std::sync::Arc;

pub use finite::{finite_class_erm, ConceptMatrix, FiniteClass, MAX_COLUMNS};
pub use halfspace::{
    HalfspaceLp, HalfspaceLpProblem, LpDecision, Perceptron, DEFAULT_LP_EXACT_LOSS_CAP,
    DEFAULT_PERCEPTRON_BUDGET,
};
pub use interval::{interval_erm, Interval};
pub use rectangle::{rectangle_erm, Rectangle, DEFAULT_RECTANGLE_EXACT_LOSS_CAP};
pub use threshold::{threshold_erm, Threshold};

use crate::error::Result;
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabeledSample};

/// One of the built-in classes.
#[derive(Clone, Debug)]
pub enum HypothesisClass {
    Threshold(Threshold),
    Interval(Interval),
    Rectangle(Rectangle),
    HalfspaceLp(HalfspaceLp),
    HalfspacePerceptron(Perceptron),
    Finite(Arc<FiniteClass>),
}

impl HypothesisClass {
    pub fn threshold() -> Self {
        HypothesisClass::Threshold(Threshold)
    }

    pub fn interval() -> Self {
        HypothesisClass::Interval(Interval)
    }

    pub fn rectangle(dim: usize) -> Result<Self> {
        Rectangle::new(dim).map(HypothesisClass::Rectangle)
    }

    pub fn halfspace_lp(dim: usize) -> Result<Self> {
        HalfspaceLp::new(dim).map(HypothesisClass::HalfspaceLp)
    }

    pub fn halfspace_perceptron(dim: usize, budget: usize) -> Result<Self> {
        Perceptron::new(dim, budget).map(HypothesisClass::HalfspacePerceptron)
    }

    pub fn finite(matrix: ConceptMatrix) -> Self {
        HypothesisClass::Finite(Arc::new(FiniteClass { matrix }))
    }

    /// Short name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            HypothesisClass::Threshold(_) => "threshold",
            HypothesisClass::Interval(_) => "interval",
            HypothesisClass::Rectangle(_) => "rectangle",
            HypothesisClass::HalfspaceLp(_) => "halfspace-lp",
            HypothesisClass::HalfspacePerceptron(_) => "halfspace-perceptron",
            HypothesisClass::Finite(_) => "finite",
        }
    }

    fn oracle(&self) -> &dyn ErmOracle {
        match self {
            HypothesisClass::Threshold(c) => c,
            HypothesisClass::Interval(c) => c,
            HypothesisClass::Rectangle(c) => c,
            HypothesisClass::HalfspaceLp(c) => c,
            HypothesisClass::HalfspacePerceptron(c) => c,
            HypothesisClass::Finite(c) => c.as_ref(),
        }
    }
}

impl ErmOracle for HypothesisClass {
    fn domain(&self) -> Domain {
        self.oracle().domain()
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        self.oracle().erm(sample)
    }

    fn closed_under_complement(&self) -> bool {
        self.oracle().closed_under_complement()
    }
}
