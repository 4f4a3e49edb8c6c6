//! Finite classes over finite domains, given as a 0-1 concept matrix.
//!
//! Rows are concepts, columns are domain points; entry `(i, j)` is 1 when
//! point `j` belongs to concept `i`.
//!
//! Text format: a header line `rows cols`, then one line per row made of
//! `0`/`1` characters with no separators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sample::{Domain, ErmOracle, ErmOutcome, LabelVector, LabeledSample, Point};

/// Widest matrix supported: one row packs into a `u64`.
pub const MAX_COLUMNS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptMatrix {
    cols: usize,
    /// Bit `j` of `rows[i]` is entry `(i, j)`.
    rows: Vec<u64>,
}

impl ConceptMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let cols = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::contract("a concept matrix needs at least one row"))?;
        if cols == 0 || cols > MAX_COLUMNS {
            return Err(Error::contract(format!(
                "column count must be in 1..={MAX_COLUMNS}, got {cols}"
            )));
        }
        let mut packed = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::contract(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            packed.push(
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| acc | (b as u64) << j),
            );
        }
        Ok(ConceptMatrix { cols, rows: packed })
    }

    /// Builds a matrix from packed rows; bits at or above `cols` must be 0.
    pub fn from_packed(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols == 0 || cols > MAX_COLUMNS || rows.is_empty() {
            return Err(Error::contract("need 1..=64 columns and at least one row"));
        }
        if cols < 64 && rows.iter().any(|r| r >> cols != 0) {
            return Err(Error::contract(
                "packed row has bits beyond the column count",
            ));
        }
        Ok(ConceptMatrix { cols, rows })
    }

    /// Every subset of `cols` points: the class that shatters its domain.
    pub fn full(cols: usize) -> Result<Self> {
        if cols == 0 || cols > 20 {
            return Err(Error::contract("full matrix needs 1..=20 columns"));
        }
        Self::from_packed(cols, (0..1u64 << cols).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row] >> col & 1 == 1
    }

    pub fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    /// Drops repeated rows, keeping first occurrences in order.
    pub fn dedup(&self) -> ConceptMatrix {
        let mut seen = HashSet::with_capacity(self.rows.len());
        ConceptMatrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .copied()
                .filter(|r| seen.insert(*r))
                .collect(),
        }
    }

    pub fn distinct_row_count(&self) -> usize {
        self.rows.iter().collect::<HashSet<_>>().len()
    }
}

impl fmt::Display for ConceptMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows.len(), self.cols)?;
        for r in 0..self.rows.len() {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for ConceptMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("expected an integer, found {s:?}"),
            })
        };
        let [r, c] = dims[..] else {
            return Err(Error::Parse {
                line: 1,
                message: "header must be \"rows cols\"".into(),
            });
        };
        let (nrows, ncols) = (parse_dim(r)?, parse_dim(c)?);
        if nrows == 0 || ncols == 0 || ncols > MAX_COLUMNS {
            return Err(Error::Parse {
                line: 1,
                message: format!("need rows >= 1 and 1 <= cols <= {MAX_COLUMNS}"),
            });
        }

        let mut rows = Vec::with_capacity(nrows);
        for (k, line) in lines {
            let line_no = k + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if rows.len() == nrows {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than the declared {nrows} rows"),
                });
            }
            if line.chars().count() != ncols {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("row has {} entries, expected {ncols}", line.chars().count()),
                });
            }
            let mut bits = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits |= 1 << j,
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("invalid character {other:?}"),
                        })
                    }
                }
            }
            rows.push(bits);
        }
        if rows.len() != nrows {
            return Err(Error::Parse {
                line: text.lines().count() + 1,
                message: format!("expected {nrows} rows, found {}", rows.len()),
            });
        }
        Ok(ConceptMatrix { cols: ncols, rows })
    }
}

/// Exact ERM over the rows of `matrix`: the row closest in Hamming distance
/// to the labels on the sample's columns, lowest index on ties.
pub fn finite_class_erm(matrix: &ConceptMatrix, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
    let cols: Vec<usize> = sample
        .points()
        .iter()
        .map(|p| match p {
            Point::Index(i) if *i < matrix.cols => Ok(*i),
            Point::Index(i) => Err(Error::domain(format!(
                "column {i} out of range for a matrix with {} columns",
                matrix.cols
            ))),
            Point::Real(_) => Err(Error::domain("finite classes take index points")),
        })
        .collect::<Result<_>>()?;

    let mut target = 0u64;
    let mut mask = 0u64;
    for (k, &c) in cols.iter().enumerate() {
        mask |= 1 << c;
        if sample.label(k) {
            target |= 1 << c;
        }
    }
    let (best_row, _) = matrix
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, ((r ^ target) & mask).count_ones()))
        .min_by_key(|&(i, dist)| (dist, i))
        .expect("matrix has rows");

    let pred = LabelVector::new(cols.iter().map(|&c| matrix.get(best_row, c)).collect());
    Ok(ErmOutcome::from_predictions(pred, sample))
}

/// A finite class with its ERM oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClass {
    pub matrix: ConceptMatrix,
}

impl ErmOracle for FiniteClass {
    fn domain(&self) -> Domain {
        Domain::Finite {
            cardinality: self.matrix.cols,
        }
    }

    fn erm(&self, sample: &LabeledSample<'_>) -> Result<ErmOutcome> {
        finite_class_erm(&self.matrix, sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::PointSet;

    fn m(text: &str) -> ConceptMatrix {
        let rows: Vec<&str> = text.split_whitespace().collect();
        ConceptMatrix::new(
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
        )
        .unwrap()
    }

    fn erm(matrix: &ConceptMatrix, cols: &[usize], labels: &str) -> Result<ErmOutcome> {
        let pts = PointSet::from_indices(cols.iter().copied()).unwrap();
        finite_class_erm(
            matrix,
            &LabeledSample::new(&pts, labels.parse().unwrap()).unwrap(),
        )
    }

    #[test]
    fn full_restriction_always_realizable() {
        let mat = m("00 01 10 11");
        for labels in ["00", "01", "10", "11"] {
            assert!(erm(&mat, &[0, 1], labels).unwrap().is_zero_loss());
        }
    }

    #[test]
    fn missing_pattern_costs_one() {
        let out = erm(&m("00 01 10"), &[0, 1], "11").unwrap();
        assert_eq!(out.loss_numerator, 1);
        // Ties between rows 01 and 10 go to the lower index.
        assert_eq!(out.predictions.unwrap().to_string(), "01");
    }

    #[test]
    fn single_column() {
        let out = erm(&m("0 1"), &[0], "1").unwrap();
        assert!(out.is_zero_loss());
        assert_eq!(out.predictions.unwrap().to_string(), "1");
    }

    #[test]
    fn out_of_range_column() {
        assert!(matches!(erm(&m("0 1"), &[1], "1"), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_and_print() {
        let mat: ConceptMatrix = "4 3\n000\n110\n101\n011\n".parse().unwrap();
        assert_eq!(mat.row_count(), 4);
        assert_eq!(mat.col_count(), 3);
        assert!(mat.get(1, 0) && mat.get(1, 1) && !mat.get(1, 2));
        assert_eq!(mat.to_string().parse::<ConceptMatrix>().unwrap(), mat);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "2 3\n000\n11\n".parse::<ConceptMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = "2 2\n00\n1x\n".parse::<ConceptMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = "3 2\n00\n11\n".parse::<ConceptMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = "two 2\n".parse::<ConceptMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!("1 2\n01\n10\n".parse::<ConceptMatrix>().is_err());
    }

    #[test]
    fn dedup_keeps_first_occurrences() {
        let mat = m("01 10 01 11 10");
        let d = mat.dedup();
        assert_eq!(d.row_count(), 3);
        assert_eq!(d.distinct_row_count(), mat.distinct_row_count());
        assert!(!d.get(0, 0) && d.get(0, 1));
    }
}
