//! Randomized VC dimension estimation.
//!
//! For `d = 1, 2, ...` the estimator draws `m` random point sets of size `d`
//! and counts how many the class fails to shatter (`Z_m`). The first `d`
//! with `Z_m = m` ends the loop and `d - 1` is reported. `m` is the smallest
//! sample size for which Hoeffding's inequality bounds
//! `P(|p - Z_m / m| > epsilon)` by `delta`, where `p` is the probability,
//! under the sampler's distribution, that a random `d`-set is not shattered.
//!
//! The estimate is relative to the sampler: a class whose shattered sets
//! have tiny probability under the chosen distribution is underestimated.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{binomial, unrank_combination};
use crate::parallel;
use crate::sample::{Domain, ErmOracle, Point, PointSet};
use crate::shattering::{shatters, ShatterOptions, MAX_SHATTER_SIZE};

/// Smallest `m` with `2 exp(-2 m epsilon^2) <= delta`, i.e.
/// `ceil(ln(2 / delta) / (2 epsilon^2))`.
pub fn hoeffding_sample_size(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::contract(format!(
            "epsilon must be in (0, 1), got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::contract(format!(
            "delta must be in (0, 1), got {delta}"
        )));
    }
    let raw = (2.0 / delta).ln() / (2.0 * epsilon * epsilon);
    // Values that are integers in exact arithmetic come out a few ulps off.
    let nearest = raw.round();
    let m = if (raw - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        raw.ceil()
    };
    Ok((m as u64).max(1))
}

/// The `(epsilon, delta)` pair and the sample size it implies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certificate {
    pub epsilon: f64,
    pub delta: f64,
    pub sample_size: u64,
}

impl Certificate {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        Ok(Certificate {
            epsilon,
            delta,
            sample_size: hoeffding_sample_size(epsilon, delta)?,
        })
    }

    /// `2 exp(-2 m epsilon^2)`, the Hoeffding bound at the chosen `m`.
    pub fn failure_bound(&self) -> f64 {
        2.0 * (-2.0 * self.sample_size as f64 * self.epsilon * self.epsilon).exp()
    }
}

/// Default cap on `C(cardinality, d)` for the exhaustive sampler.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum SamplerKind {
    /// Independent uniform points in `[lo_j, hi_j)` per coordinate.
    UniformBox { lo: Vec<f64>, hi: Vec<f64> },
    /// Uniform `d`-subsets of `{0, ..., cardinality - 1}`.
    FiniteUniform { cardinality: usize },
    /// Every `d`-subset in lexicographic order, replacing the `m` random
    /// draws. Fails when there are more than `cap` subsets.
    Exhaustive { cardinality: usize, cap: u64 },
}

/// How the `d`-sets are drawn. Each draw uses its own random stream keyed
/// on `(seed, d, draw_index)`, so results do not depend on draw order or
/// worker count.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSampler {
    pub kind: SamplerKind,
    pub seed: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl DomainSampler {
    pub fn uniform_box(lo: Vec<f64>, hi: Vec<f64>, seed: u64) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::contract(
                "box bounds need matching, non-empty lengths",
            ));
        }
        if lo
            .iter()
            .zip(&hi)
            .any(|(l, h)| l >= h || !l.is_finite() || !h.is_finite())
        {
            return Err(Error::contract(
                "box bounds need finite lo < hi in every coordinate",
            ));
        }
        Ok(DomainSampler {
            kind: SamplerKind::UniformBox { lo, hi },
            seed,
        })
    }

    /// The cube `[lo, hi)^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64, seed: u64) -> Result<Self> {
        Self::uniform_box(vec![lo; dim], vec![hi; dim], seed)
    }

    pub fn finite_uniform(cardinality: usize, seed: u64) -> Result<Self> {
        if cardinality == 0 {
            return Err(Error::contract("finite domain must be non-empty"));
        }
        Ok(DomainSampler {
            kind: SamplerKind::FiniteUniform { cardinality },
            seed,
        })
    }

    pub fn exhaustive(cardinality: usize) -> Result<Self> {
        if cardinality == 0 {
            return Err(Error::contract("finite domain must be non-empty"));
        }
        Ok(DomainSampler {
            kind: SamplerKind::Exhaustive {
                cardinality,
                cap: DEFAULT_EXHAUSTIVE_CAP,
            },
            seed: 0,
        })
    }

    pub fn domain(&self) -> Domain {
        match &self.kind {
            SamplerKind::UniformBox { lo, .. } => Domain::Real { dim: lo.len() },
            SamplerKind::FiniteUniform { cardinality }
            | SamplerKind::Exhaustive { cardinality, .. } => Domain::Finite {
                cardinality: *cardinality,
            },
        }
    }

    pub fn cardinality(&self) -> Option<usize> {
        match self.domain() {
            Domain::Finite { cardinality } => Some(cardinality),
            Domain::Real { .. } => None,
        }
    }

    /// Number of draws at size `d`: `m` for random samplers, `C(N, d)` for
    /// the exhaustive one.
    pub fn draws_for(&self, d: usize, m: u64) -> Result<u64> {
        match &self.kind {
            SamplerKind::Exhaustive { cardinality, cap } => {
                let n = binomial(*cardinality as u64, d as u64);
                if n > *cap {
                    return Err(Error::contract(format!(
                        "exhaustive sampler: C({cardinality}, {d}) = {n} exceeds the cap {cap}"
                    )));
                }
                Ok(n)
            }
            _ => Ok(m),
        }
    }

    fn rng(&self, d: usize, draw_index: u64) -> ChaCha8Rng {
        let h = splitmix64(splitmix64(splitmix64(self.seed) ^ d as u64) ^ draw_index);
        ChaCha8Rng::seed_from_u64(h)
    }

    /// The `draw_index`-th set of `d` distinct points at size `d`.
    pub fn sample(&self, d: usize, draw_index: u64) -> Result<PointSet> {
        if d == 0 {
            return Err(Error::contract("sample size d must be >= 1"));
        }
        if let Some(card) = self.cardinality() {
            if d > card {
                return Err(Error::contract(format!(
                    "cannot draw {d} distinct points from a domain of {card}"
                )));
            }
        }
        match &self.kind {
            SamplerKind::UniformBox { lo, hi } => {
                let mut rng = self.rng(d, draw_index);
                let mut pts: Vec<Vec<f64>> = Vec::with_capacity(d);
                while pts.len() < d {
                    let p: Vec<f64> = lo
                        .iter()
                        .zip(hi)
                        .map(|(&l, &h)| rng.gen_range(l..h))
                        .collect();
                    if !pts.contains(&p) {
                        pts.push(p);
                    }
                }
                PointSet::from_coords(pts)
            }
            SamplerKind::FiniteUniform { cardinality } => {
                let mut rng = self.rng(d, draw_index);
                let mut picked = index::sample(&mut rng, *cardinality, d).into_vec();
                picked.sort_unstable();
                PointSet::from_indices(picked)
            }
            SamplerKind::Exhaustive { cardinality, .. } => {
                let total = binomial(*cardinality as u64, d as u64);
                if draw_index >= total {
                    return Err(Error::contract(format!(
                        "draw {draw_index} past the {total} subsets of size {d}"
                    )));
                }
                PointSet::new(
                    unrank_combination(*cardinality, d, draw_index)
                        .into_iter()
                        .map(Point::Index)
                        .collect(),
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateOptions {
    pub epsilon: f64,
    pub delta: f64,
    pub d_max: usize,
    /// Global worker budget. Draws run in parallel; each shattering check
    /// inside a draw is sequential.
    pub workers: usize,
    /// Stop drawing at a size once one set is shattered. `Z_m` is then only
    /// a lower bound, flagged on the row.
    pub early_break: bool,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            epsilon: 0.05,
            delta: 0.05,
            d_max: 32,
            workers: 1,
            early_break: true,
        }
    }
}

/// Statistics for one value of `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DRecord {
    pub d: usize,
    /// Draws scheduled at this size (`m`, or `C(N, d)` when exhaustive).
    pub draws: u64,
    /// `Z_m`: draws the class did not shatter.
    pub unshattered: u64,
    /// Unshattered draws whose verdict rests on an exhausted oracle budget.
    pub unresolved: u64,
    /// Set when early break skipped draws, making `unshattered` a lower bound.
    pub lower_bound: bool,
    /// Index of the first shattered draw, if any.
    pub first_shattered: Option<u64>,
    /// `d` exceeded the finite domain; nothing was sampled.
    pub short_circuit: bool,
    pub elapsed: Duration,
}

impl DRecord {
    /// Whether this row ends the loop.
    pub fn stops(&self) -> bool {
        self.unshattered == self.draws
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcValue {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for VcValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VcValue::Finite(v) => write!(f, "{v}"),
            VcValue::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VcEstimate {
    pub vc: VcValue,
    pub per_d: Vec<DRecord>,
    pub certificate: Certificate,
    pub sampler: DomainSampler,
    pub terminated_at_dmax: bool,
}

impl VcEstimate {
    pub fn seed(&self) -> u64 {
        self.sampler.seed
    }

    /// The row that stopped the loop, if any.
    pub fn stopping_row(&self) -> Option<&DRecord> {
        self.per_d.last().filter(|r| r.stops())
    }
}

struct Draw {
    shattered: bool,
    unresolved: bool,
}

fn check_compatible(class: Domain, sampler: Domain) -> Result<()> {
    match (class, sampler) {
        (Domain::Real { dim: a }, Domain::Real { dim: b }) if a == b => Ok(()),
        (Domain::Finite { cardinality: a }, Domain::Finite { cardinality: b }) if b <= a => Ok(()),
        (c, s) => Err(Error::contract(format!(
            "sampler domain {s:?} does not fit the class domain {c:?}"
        ))),
    }
}

/// Estimates the VC dimension of `class` under `sampler`.
pub fn estimate_vcdim<O: ErmOracle + ?Sized>(
    class: &O,
    sampler: &DomainSampler,
    options: &EstimateOptions,
) -> Result<VcEstimate> {
    let certificate = Certificate::new(options.epsilon, options.delta)?;
    if options.d_max == 0 || options.d_max > MAX_SHATTER_SIZE {
        return Err(Error::contract(format!(
            "d_max must be in 1..={MAX_SHATTER_SIZE}, got {}",
            options.d_max
        )));
    }
    check_compatible(class.domain(), sampler.domain())?;
    let m = certificate.sample_size;
    let inner = ShatterOptions::with_workers(1);

    let mut per_d: Vec<DRecord> = Vec::new();
    for d in 1..=options.d_max {
        let start = Instant::now();

        if sampler.cardinality().is_some_and(|card| d > card) {
            per_d.push(DRecord {
                d,
                draws: m,
                unshattered: m,
                unresolved: 0,
                lower_bound: false,
                first_shattered: None,
                short_circuit: true,
                elapsed: start.elapsed(),
            });
            return Ok(VcEstimate {
                vc: VcValue::Finite(d - 1),
                per_d,
                certificate,
                sampler: sampler.clone(),
                terminated_at_dmax: false,
            });
        }

        let abort = |per_d: Vec<DRecord>, e: Error| Error::EstimationAborted {
            d,
            completed: per_d,
            source: Box::new(e),
        };
        let draws = match sampler.draws_for(d, m) {
            Ok(n) => n,
            Err(e) => return Err(abort(per_d, e)),
        };

        let results = parallel::collect_prefix(
            draws,
            options.workers.max(1),
            |i| -> Result<Draw> {
                let points = sampler.sample(d, i)?;
                let v = shatters(class, &points, &inner)?;
                Ok(Draw {
                    shattered: v.shattered,
                    unresolved: v.unresolved,
                })
            },
            |r| match r {
                Ok(draw) => options.early_break && draw.shattered,
                Err(_) => true,
            },
        );

        let mut unshattered = 0;
        let mut unresolved = 0;
        let mut first_shattered = None;
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(draw) if draw.shattered => {
                    first_shattered.get_or_insert(i as u64);
                }
                Ok(draw) => {
                    unshattered += 1;
                    unresolved += draw.unresolved as u64;
                }
                Err(e) => return Err(abort(per_d, e)),
            }
        }
        let record = DRecord {
            d,
            draws,
            unshattered,
            unresolved,
            lower_bound: options.early_break && first_shattered.is_some_and(|i| i + 1 < draws),
            first_shattered,
            short_circuit: false,
            elapsed: start.elapsed(),
        };
        let stop = record.stops();
        per_d.push(record);
        if stop {
            return Ok(VcEstimate {
                vc: VcValue::Finite(d - 1),
                per_d,
                certificate,
                sampler: sampler.clone(),
                terminated_at_dmax: false,
            });
        }
    }
    Ok(VcEstimate {
        vc: VcValue::Infinite,
        per_d,
        certificate,
        sampler: sampler.clone(),
        terminated_at_dmax: true,
    })
}
