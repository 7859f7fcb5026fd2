//! Plain-text matrix files.
//!
//! The first line is `rows cols field` with `field` either `real` or
//! `complex`; each following line holds one entry (`re` or `re im`) in
//! row-major order.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::dense::CMatrix;
use crate::error::{Error, Result};

/// Renders a matrix, choosing the `real` field when every imaginary part is zero.
pub fn format_matrix(m: &CMatrix) -> String {
    let real = m.as_slice().iter().all(|z| z.im == 0.0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), if real { "real" } else { "complex" });
    for z in m.as_slice() {
        if real {
            let _ = writeln!(out, "{:.16e}", z.re);
        } else {
            let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
        }
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::Parse { line: hline, msg: "expected `rows cols field`".into() });
    }
    let dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse { line: hline, msg: format!("bad dimension {s:?}: {e}") })
    };
    let rows = dim(parts[0])?;
    let cols = dim(parts[1])?;
    let complex = match parts[2] {
        "real" => false,
        "complex" => true,
        other => {
            return Err(Error::Parse { line: hline, msg: format!("unknown field {other:?}") })
        }
    };
    let mut data = Vec::with_capacity(rows * cols);
    for (lno, line) in lines {
        if data.len() == rows * cols {
            return Err(Error::Parse { line: lno, msg: "trailing data".into() });
        }
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: lno, msg: e.to_string() })?;
        let z = match (complex, nums.as_slice()) {
            (false, [re]) => Complex64::new(*re, 0.0),
            (true, [re, im]) => Complex64::new(*re, *im),
            _ => {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("expected {} number(s)", if complex { 2 } else { 1 }),
                })
            }
        };
        data.push(z);
    }
    if data.len() != rows * cols {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {} entries, found {}", rows * cols, data.len()),
        });
    }
    Ok(CMatrix::from_vec(rows, cols, data))
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text)
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    std::fs::write(path, format_matrix(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_round_trip_is_exact() {
        let m = CMatrix::from_fn(2, 3, |i, j| Complex64::new(1.0 / (1.0 + i as f64 + 7.0 * j as f64), 0.0));
        let text = format_matrix(&m);
        assert!(text.starts_with("2 3 real\n"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn complex_round_trip_is_exact() {
        let m = CMatrix::from_vec(1, 2, vec![Complex64::new(0.1, -1e-300), Complex64::new(-3.0, 2.0 / 3.0)]);
        let text = format_matrix(&m);
        assert!(text.starts_with("1 2 complex\n"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn rejects_short_input() {
        assert!(matches!(parse_matrix("2 2 real\n1\n2\n3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("1 1 complex\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("1 1 quaternion\n1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_matrix_has_only_a_header() {
        let m = CMatrix::zeros(0, 3);
        assert_eq!(format_matrix(&m), "0 3 real\n");
        assert_eq!(parse_matrix("0 3 real\n").unwrap().shape(), (0, 3));
    }
}
