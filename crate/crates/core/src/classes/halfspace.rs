//! Nonhomogeneous half-spaces `x -> 1[<w, x> + b > 0]` in `R^n`.
//!
//! Every point is augmented with a constant 1 and multiplied by its sign
//! (`+1` for label 1, `-1` for label 0). A sample is realizable iff some `w`
//! makes every signed, augmented point strictly positive, which after scaling
//! is `A w >= 1`. Points on the boundary hyperplane count as not separated.

use num::{BigRational, Signed, Zero};

use super::simplex::{self, Phase1, Scalar};
use crate::error::{Error, Result};
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabelVector, LabeledSample};

/// Default number of points up to which an infeasible sample gets its exact
/// minimum loss computed.
pub const DEFAULT_LP_EXACT_LOSS_CAP: usize = 16;

/// Default perceptron update budget.
pub const DEFAULT_PERCEPTRON_BUDGET: usize = 10_000;

/// One row of the separability system: `sign * (x, 1)`.
fn signed_row(x: &[f64], label: bool) -> Vec<f64> {
    let s = if label { 1.0 } else { -1.0 };
    x.iter().map(|v| s * v).chain(std::iter::once(s)).collect()
}

/// Rows `A_{i,.} = s_i * (x_i, 1)` of the strict separability program
/// `A w >= 1` (objective identically zero).
#[derive(Clone, Debug, PartialEq)]
pub struct HalfspaceLpProblem {
    pub rows: Vec<Vec<f64>>,
}

impl HalfspaceLpProblem {
    pub fn from_sample(sample: &LabeledSample<'_>) -> Self {
        let pts = sample.points();
        HalfspaceLpProblem {
            rows: (0..sample.len())
                .map(|i| signed_row(pts.coords(i), sample.label(i)))
                .collect(),
        }
    }

    /// Number of unknowns, `n + 1`.
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Exact sign of `row . w` for an `f64` vector `w`.
///
/// A floating-point error bound settles most cases; the rest fall back to
/// rational arithmetic.
pub(crate) fn exact_dot_sign(row: &[f64], w: &[f64]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let mut sum = 0.0f64;
    let mut mag = 0.0f64;
    for (a, b) in row.iter().zip(w) {
        let t = a * b;
        sum += t;
        mag += t.abs();
    }
    let k = row.len() as f64;
    let bound = (k + 2.0) * f64::EPSILON * mag;
    if mag > 1e-280 && mag.is_finite() {
        if sum > bound {
            return Ordering::Greater;
        }
        if sum < -bound {
            return Ordering::Less;
        }
    }
    let exact = row
        .iter()
        .zip(w)
        .fold(<BigRational as Zero>::zero(), |acc, (a, b)| {
            acc + simplex::to_rational(*a) * simplex::to_rational(*b)
        });
    if exact.is_positive() {
        Ordering::Greater
    } else if exact.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Decides strict feasibility of `rows . w >= 1` exactly.
///
/// A float simplex runs first. Its witness is accepted only after every row
/// is re-checked exactly, and its infeasibility only when the rows its duals
/// point at admit an exact nonnegative combination summing to zero. Anything
/// else is re-decided in rationals.
pub(crate) fn separate(rows: &[Vec<f64>]) -> Result<Option<Vec<BigRational>>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Ok(Some(Vec::new()));
    };
    match simplex::strictly_feasible::<f64>(rows, width) {
        Ok(Phase1::Feasible(w)) => {
            if w.iter().all(|x| x.is_finite())
                && rows
                    .iter()
                    .all(|r| exact_dot_sign(r, &w) == std::cmp::Ordering::Greater)
            {
                return Ok(Some(w.iter().map(|&x| simplex::to_rational(x)).collect()));
            }
        }
        Ok(Phase1::Infeasible(duals)) => {
            let support: Vec<usize> = (0..rows.len()).filter(|&i| duals[i] > 1e-9).collect();
            if support.len() <= width + 1 && farkas_certificate(rows, &support) {
                return Ok(None);
            }
        }
        Err(_) => {}
    }
    let exact_rows: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| simplex::to_rational(x)).collect())
        .collect();
    match simplex::strictly_feasible::<BigRational>(&exact_rows, width) {
        Ok(Phase1::Feasible(w)) => Ok(Some(w)),
        Ok(Phase1::Infeasible(_)) => Ok(None),
        Err(_) => Err(Error::Oracle(
            "exact simplex exceeded its pivot limit".into(),
        )),
    }
}

/// Half-space ERM through linear-programming feasibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceLp {
    pub dim: usize,
    /// Samples up to this size get their exact minimum loss when they are
    /// not separable; larger ones report loss 1 as a lower bound.
    pub exact_loss_cap: usize,
}

/// Outcome of the LP oracle together with the separating weights, when
/// they exist. `weights` has `dim + 1` entries, the last one the bias.
#[derive(Clone, Debug)]
pub struct LpDecision {
    pub outcome: ErmOutcome,
    pub weights: Option<Vec<BigRational>>,
}

impl HalfspaceLp {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("half-spaces need dimension >= 1"));
        }
        Ok(HalfspaceLp {
            dim,
            exact_loss_cap: DEFAULT_LP_EXACT_LOSS_CAP,
        })
    }

    pub fn decide(&self, sample: &LabeledSample<'_>) -> Result<LpDecision> {
        self.domain().check(sample.points())?;
        let problem = HalfspaceLpProblem::from_sample(sample);
        if let Some(w) = separate(&problem.rows)? {
            return Ok(LpDecision {
                outcome: ErmOutcome::realized(sample),
                weights: Some(w),
            });
        }
        let d = sample.len();
        let outcome = if d <= self.exact_loss_cap {
            ErmOutcome::unrealizable(min_violations(&problem.rows)?, true, d)
        } else {
            ErmOutcome::unrealizable(1, false, d)
        };
        Ok(LpDecision {
            outcome,
            weights: None,
        })
    }
}

/// Smallest number of rows whose removal leaves a separable system. Only
/// called on infeasible systems, so the answer is at least 1.
fn min_violations(rows: &[Vec<f64>]) -> Result<usize> {
    let d = rows.len();
    for k in 1..d {
        let mut found = false;
        for_each_combination(d, k, &mut |drop| {
            let kept: Vec<Vec<f64>> = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, r)| r.clone())
                .collect();
            match separate(&kept) {
                Ok(Some(_)) => {
                    found = true;
                    Ok(true)
                }
                Ok(None) => Ok(false),
                Err(e) => Err(e),
            }
        })?;
        if found {
            return Ok(k);
        }
    }
    // A single point is always separable.
    Ok(d.saturating_sub(1).max(1))
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `Ok(true)`.
fn for_each_combination(
    n: usize,
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx)? {
            return Ok(());
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl ErmOracle for HalfspaceLp {
    fn domain(&self) -> Domain {
        Domain::Real { dim: self.dim }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        self.decide(sample).map(|d| d.outcome)
    }

    fn closed_under_complement(&self) -> bool {
        true
    }
}

/// Half-space ERM through the perceptron update rule.
///
/// Starts from `w = 0`, visits points cyclically, and adds `s_i * (x_i, 1)`
/// on every mistake (`s_i <w, (x_i, 1)> <= 0`), for at most `budget`
/// updates. A pass without mistakes is re-verified in exact arithmetic
/// before zero loss is reported.
///
/// With `certify_infeasibility` set, the points mistaken during recent
/// passes are tested for an exact Farkas certificate: a nonzero `lambda >= 0`
/// with `sum lambda_i s_i (x_i, 1) = 0`. Such a certificate proves that no
/// half-space separates the sample, and the oracle stops without spending
/// the rest of its budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perceptron {
    pub dim: usize,
    pub budget: usize,
    pub certify_infeasibility: bool,
}

impl Perceptron {
    pub fn new(dim: usize, budget: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("half-spaces need dimension >= 1"));
        }
        if budget == 0 {
            return Err(Error::contract("perceptron budget must be >= 1"));
        }
        Ok(Perceptron {
            dim,
            budget,
            certify_infeasibility: true,
        })
    }

    /// The plain update rule, without infeasibility certificates.
    pub fn plain(dim: usize, budget: usize) -> Result<Self> {
        Ok(Perceptron {
            certify_infeasibility: false,
            ..Self::new(dim, budget)?
        })
    }
}

fn predict(rows: &[Vec<f64>], labels: &LabelVector, w: &[f64]) -> LabelVector {
    // rows are signed; undo the sign to get <w, (x, 1)>.
    rows.iter()
        .zip(labels.iter())
        .map(|(r, y)| {
            let s = exact_dot_sign(r, w);
            if y {
                s == std::cmp::Ordering::Greater
            } else {
                s == std::cmp::Ordering::Less
            }
        })
        .collect::<Vec<_>>()
        .into()
}

const CERTIFY_WINDOWS: [usize; 3] = [1, 2, 4];

impl ErmOracle for Perceptron {
    fn domain(&self) -> Domain {
        Domain::Real { dim: self.dim }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        self.domain().check(sample.points())?;
        let rows = HalfspaceLpProblem::from_sample(sample).rows;
        let labels = sample.labels();
        let width = self.dim + 1;
        let mut w = vec![0.0f64; width];
        let mut updates = 0usize;

        let mut best = ErmOutcome::from_predictions(predict(&rows, labels, &w), sample);
        // Mistaken points of the most recent passes, newest last.
        let mut history: Vec<Vec<usize>> = Vec::new();

        loop {
            let mut mistakes = Vec::new();
            for (i, r) in rows.iter().enumerate() {
                let margin: f64 = r.iter().zip(&w).map(|(a, b)| a * b).sum();
                if margin > 0.0 {
                    continue;
                }
                if updates == self.budget {
                    best.budget_exhausted = true;
                    return Ok(best);
                }
                for (wj, aj) in w.iter_mut().zip(r) {
                    *wj += aj;
                }
                updates += 1;
                mistakes.push(i);
                let candidate = ErmOutcome::from_predictions(predict(&rows, labels, &w), sample);
                if candidate.loss_numerator < best.loss_numerator {
                    best = candidate;
                }
            }

            if mistakes.is_empty() {
                // Float arithmetic said every margin is positive; confirm.
                match rows
                    .iter()
                    .position(|r| exact_dot_sign(r, &w) != std::cmp::Ordering::Greater)
                {
                    None => return Ok(ErmOutcome::realized(sample)),
                    Some(i) => {
                        if updates == self.budget {
                            best.budget_exhausted = true;
                            return Ok(best);
                        }
                        for (wj, aj) in w.iter_mut().zip(&rows[i]) {
                            *wj += aj;
                        }
                        updates += 1;
                        mistakes.push(i);
                    }
                }
            }

            history.push(mistakes);
            if history.len() > CERTIFY_WINDOWS[CERTIFY_WINDOWS.len() - 1] {
                history.remove(0);
            }
            if self.certify_infeasibility && history.len() >= 2 {
                for &window in &CERTIFY_WINDOWS {
                    if window > history.len() {
                        break;
                    }
                    let mut support: Vec<usize> = history[history.len() - window..]
                        .iter()
                        .flatten()
                        .copied()
                        .collect();
                    support.sort_unstable();
                    support.dedup();
                    if support.len() <= width + 1 && farkas_certificate(&rows, &support) {
                        return Ok(best);
                    }
                }
            }
        }
    }

    fn closed_under_complement(&self) -> bool {
        true
    }
}

/// Whether some nonzero `lambda >= 0` supported on `support` satisfies
/// `sum lambda_i rows[i] = 0`, decided exactly when the null space of the
/// support is one-dimensional.
pub(crate) fn farkas_certificate(rows: &[Vec<f64>], support: &[usize]) -> bool {
    let k = support.len();
    if k == 0 {
        return false;
    }
    let width = rows[support[0]].len();
    if !float_null_vector_is_definite(rows, support) {
        return false;
    }
    // Matrix with one column per support row: width x k.
    let mut m: Vec<Vec<BigRational>> = (0..width)
        .map(|j| {
            support
                .iter()
                .map(|&i| simplex::to_rational(rows[i][j]))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m, k);
    if k - pivots.len() != 1 {
        return false;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    // Null vector: free variable = 1, pivot variables = -m[row][free].
    let mut lambda = vec![<BigRational as Zero>::zero(); k];
    lambda[free] = <BigRational as Scalar>::one();
    for (r, &pc) in pivots.iter().enumerate() {
        lambda[pc] = -m[r][free].clone();
    }
    let all_nonneg = lambda.iter().all(|x| !x.is_negative());
    let all_nonpos = lambda.iter().all(|x| !x.is_positive());
    all_nonneg || all_nonpos
}

/// Cheap float screen for [`farkas_certificate`]: a one-dimensional null
/// space whose basis vector has no entry of the wrong sign. Rejects only
/// supports that are clearly hopeless.
fn float_null_vector_is_definite(rows: &[Vec<f64>], support: &[usize]) -> bool {
    const TOL: f64 = 1e-7;
    let k = support.len();
    let width = rows[support[0]].len();
    let mut m: Vec<Vec<f64>> = (0..width)
        .map(|j| support.iter().map(|&i| rows[i][j]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        if row == m.len() {
            break;
        }
        let p = (row..m.len())
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .unwrap();
        if m[p][c].abs() <= TOL {
            continue;
        }
        m.swap(row, p);
        let piv = m[row][c];
        for x in m[row].iter_mut() {
            *x /= piv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && other[c] != 0.0 {
                let f = other[c];
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if k - pivots.len() != 1 {
        return false;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let coeffs: Vec<f64> = pivots
        .iter()
        .enumerate()
        .map(|(r, _)| -m[r][free])
        .collect();
    coeffs.iter().all(|&x| x >= -TOL) || coeffs.iter().all(|&x| x <= TOL)
}

/// Reduced row echelon form in place; returns pivot columns by row.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let piv = m[row][c].clone();
        for x in m[row].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * p;
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}
