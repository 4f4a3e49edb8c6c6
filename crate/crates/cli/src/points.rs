//! Point lists from the command line or a file.
//!
//! Inline: tuples separated by `;`, coordinates by `,`, parentheses
//! optional. One-dimensional points may also be separated by `,` alone, so
//! `0.25,0.75` is two points when `dim` is 1. Files hold one point per line;
//! blank lines and lines starting with `#` are skipped.

use vcdim_core::{Error, Point, PointSet, Result};

fn parse_tuple(text: &str, line: usize) -> Result<Vec<f64>> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(inner);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("bad coordinate {t:?}"),
            })
        })
        .collect()
}

fn check_dims(coords: &[Vec<f64>], dim: usize, lines: &[usize]) -> Result<()> {
    for (c, &line) in coords.iter().zip(lines) {
        if c.len() != dim {
            return Err(Error::Parse {
                line,
                message: format!("expected {dim} coordinates, found {}", c.len()),
            });
        }
    }
    Ok(())
}

/// Tuples of coordinates from the inline grammar.
pub fn parse_inline_coords(text: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no points given".into(),
        });
    }
    let coords: Vec<Vec<f64>> = if dim == 1 && !text.contains(';') && !text.contains('(') {
        text.split(',')
            .map(|t| parse_tuple(t, 1))
            .collect::<Result<_>>()?
    } else {
        text.split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_tuple(t, 1))
            .collect::<Result<_>>()?
    };
    check_dims(&coords, dim, &vec![1; coords.len()])?;
    Ok(coords)
}

/// One point per line.
pub fn parse_file_coords(text: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut coords = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        coords.push(parse_tuple(t, i + 1)?);
        lines.push(i + 1);
    }
    if coords.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no points given".into(),
        });
    }
    check_dims(&coords, dim, &lines)?;
    Ok(coords)
}

pub fn real_points(coords: Vec<Vec<f64>>) -> Result<PointSet> {
    PointSet::from_coords(coords)
}

/// Column indices for the finite class, written like one-dimensional
/// points.
pub fn index_points(coords: Vec<Vec<f64>>) -> Result<PointSet> {
    let points = coords
        .into_iter()
        .map(|c| {
            let v = c[0];
            if v < 0.0 || v.fract() != 0.0 || v > usize::MAX as f64 {
                Err(Error::Domain(format!("{v} is not a column index")))
            } else {
                Ok(Point::Index(v as usize))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(points)
}
