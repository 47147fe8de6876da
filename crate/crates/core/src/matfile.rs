//! Plain-text matrix files.
//!
//! First line: `m n`. Then m lines of n space-separated decimal floats.
//! Blank lines and surrounding whitespace are tolerated on read; writes are
//! canonical (single spaces, one row per line, trailing newline).

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<DMatrix<f64>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedMatrixFile("empty file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::MalformedMatrixFile(format!(
            "header must be `m n`, got {header:?}"
        )));
    }
    let m: usize = dims[0]
        .parse()
        .map_err(|_| Error::MalformedMatrixFile(format!("bad row count {:?}", dims[0])))?;
    let n: usize = dims[1]
        .parse()
        .map_err(|_| Error::MalformedMatrixFile(format!("bad column count {:?}", dims[1])))?;
    if m == 0 || n == 0 {
        return Err(Error::MalformedMatrixFile(format!(
            "dimensions must be positive, got {m}x{n}"
        )));
    }

    let mut entries = Vec::with_capacity(m * n);
    for (r, line) in lines.enumerate() {
        if r >= m {
            return Err(Error::MalformedMatrixFile(format!(
                "expected {m} rows, found more"
            )));
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::MalformedMatrixFile(format!("bad value {tok:?} in row {r}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::MalformedMatrixFile(format!(
                "row {r} has {} values, expected {n}",
                row.len()
            )));
        }
        entries.extend(row);
    }
    if entries.len() != m * n {
        return Err(Error::MalformedMatrixFile(format!(
            "expected {m} rows, found {}",
            entries.len() / n
        )));
    }
    Ok(DMatrix::from_row_slice(m, n, &entries))
}

pub fn format_matrix(mat: &DMatrix<f64>) -> String {
    let mut out = format!("{} {}\n", mat.nrows(), mat.ncols());
    for i in 0..mat.nrows() {
        let row: Vec<String> = (0..mat.ncols()).map(|j| mat[(i, j)].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, mat: &DMatrix<f64>) -> Result<()> {
    fs::write(path, format_matrix(mat))?;
    Ok(())
}
