//! Deciding shattering through empirical risk minimization, and estimating
//! the VC dimension of binary hypothesis classes by Hoeffding-calibrated
//! random sampling.
//!
//! The pieces:
//!
//! - [`sample`]: points, labels, labeled samples, the 0-1 loss and the
//!   [`ErmOracle`] contract.
//! - [`classes`]: built-in hypothesis classes with concrete ERM oracles
//!   (thresholds, intervals, boxes, half-spaces, finite concept matrices).
//! - [`shattering`]: runs an oracle over all `2^d` labelings of a point set.
//! - [`estimator`]: the randomized `d`-loop that turns shattering checks
//!   into a VC dimension estimate.
//! - [`exact`]: exhaustive column-subset search for finite classes, used as
//!   ground truth.

pub mod classes;
pub mod error;
pub mod estimator;
pub mod exact;
mod parallel;
pub mod sample;
pub mod shattering;

pub use classes::{ConceptMatrix, HypothesisClass};
pub use error::{Error, Result};
pub use estimator::{
    estimate_vcdim, hoeffding_sample_size, Certificate, DomainSampler, EstimateOptions,
    SamplerKind, VcEstimate, VcValue,
};
pub use exact::{exact_shattered_witness, exact_vcdim_matrix};
pub use sample::{
    empirical_loss, Domain, ErmOracle, ErmOutcome, Label, LabelVector, LabeledSample, Point,
    PointSet,
};
pub use shattering::{
    enumerate_labelings, shatters, shatters_matrix_reference, ShatterOptions, ShatterVerdict,
};
