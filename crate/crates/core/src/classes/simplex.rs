//! Phase-one simplex for strict linear separability.
//!
//! Decides whether some `w` satisfies `a_i . w >= 1` for every row `a_i`,
//! with `w` free. The tableau works over any [`Scalar`]: `f64` for the fast
//! pre-filter and `BigRational` for the exact decision. Bland's rule keeps
//! the exact run from cycling.

use std::cmp::Ordering;
use std::fmt::Debug;

use num::{BigInt, BigRational, Signed, Zero};

pub(crate) trait Scalar: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    /// Sign, with whatever tolerance the type needs.
    fn sign(&self) -> Ordering;
    fn is_exact_zero(&self) -> bool;
}

const FLOAT_TOL: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn sign(&self) -> Ordering {
        if *self > FLOAT_TOL {
            Ordering::Greater
        } else if *self < -FLOAT_TOL {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Exact rational value of a finite `f64`.
pub(crate) fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

pub(crate) enum Phase1<T> {
    Feasible(Vec<T>),
    /// Optimal phase-one duals, one per row: a nonnegative combination of
    /// the rows that (up to rounding) sums to zero.
    Infeasible(Vec<T>),
}

#[derive(Debug)]
pub(crate) struct PivotLimit;

/// Searches for `w` (length `width`) with `rows[i] . w >= 1` for all `i`.
///
/// Columns are `w+` (`width`), `w-` (`width`) and one surplus per row;
/// artificial columns are implicit and dropped once they leave the basis.
pub(crate) fn strictly_feasible<T: Scalar>(
    rows: &[Vec<T>],
    width: usize,
) -> Result<Phase1<T>, PivotLimit> {
    let m = rows.len();
    let ncols = 2 * width + m;
    let artificial = |i: usize| ncols + i;

    // tableau[i] = [coefficients..., rhs]
    let mut tab: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            debug_assert_eq!(a.len(), width);
            let mut r = Vec::with_capacity(ncols + 1);
            r.extend(a.iter().cloned());
            r.extend(a.iter().map(|x| T::zero().sub(x)));
            r.extend((0..m).map(|k| {
                if k == i {
                    T::zero().sub(&T::one())
                } else {
                    T::zero()
                }
            }));
            r.push(T::one());
            r
        })
        .collect();
    let mut basis: Vec<usize> = (0..m).map(artificial).collect();

    // Reduced costs of minimizing the sum of artificials; the last entry
    // holds minus the current objective value.
    let mut obj: Vec<T> = (0..=ncols)
        .map(|j| {
            let s = tab.iter().fold(T::zero(), |acc, r| acc.add(&r[j]));
            T::zero().sub(&s)
        })
        .collect();

    let max_pivots = 50 * (m + ncols) + 100;
    for _ in 0..max_pivots {
        let Some(enter) = (0..ncols).find(|&j| obj[j].sign() == Ordering::Less) else {
            return Ok(finish(&tab, &basis, &obj, width, ncols));
        };

        let mut leave: Option<(usize, T)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].sign() != Ordering::Greater {
                continue;
            }
            let ratio = row[ncols].div(&row[enter]);
            let better = match &leave {
                None => true,
                Some((li, best)) => match ratio.sub(best).sign() {
                    Ordering::Less => true,
                    Ordering::Equal => basis[i] < basis[*li],
                    Ordering::Greater => false,
                },
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero; an unbounded ray only shows up
        // through float noise.
        let Some((pr, _)) = leave else {
            return Err(PivotLimit);
        };

        let piv = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x = x.div(&piv);
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pr || row[enter].is_exact_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.sub(&f.mul(p));
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&pivot_row) {
            *x = x.sub(&f.mul(p));
        }
        basis[pr] = enter;
    }
    Err(PivotLimit)
}

fn finish<T: Scalar>(
    tab: &[Vec<T>],
    basis: &[usize],
    obj: &[T],
    width: usize,
    ncols: usize,
) -> Phase1<T> {
    if obj[ncols].sign() != Ordering::Equal {
        let m = tab.len();
        return Phase1::Infeasible(obj[2 * width..2 * width + m].to_vec());
    }
    let mut x = vec![T::zero(); ncols];
    for (row, &b) in tab.iter().zip(basis) {
        if b < ncols {
            x[b] = row[ncols].clone();
        }
    }
    Phase1::Feasible((0..width).map(|j| x[j].sub(&x[width + j])).collect())
}
