//! Matrix Market (coordinate pattern) and MacKay alist text formats.

use std::fmt::Write as _;

use super::BitMatrix;
use crate::error::{Error, Result};

const MM_HEADER: &str = "%%MatrixMarket matrix coordinate pattern general";

pub fn to_matrix_market(m: &BitMatrix) -> String {
    let nz = m.nonzeros();
    let mut s = format!("{MM_HEADER}\n{} {} {}\n", m.rows(), m.cols(), nz.len());
    for (r, c) in nz {
        let _ = writeln!(s, "{} {}", r + 1, c + 1);
    }
    s
}

fn nums(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::Format(format!("bad integer `{t}`: {e}"))))
        .collect()
}

pub fn from_matrix_market(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Format("empty Matrix Market file".into()))?;
    let h = header.to_ascii_lowercase();
    if !h.starts_with("%%matrixmarket") || !h.contains("coordinate") {
        return Err(Error::Format(format!("unsupported header `{header}`")));
    }
    let mut lines = lines.filter(|l| !l.starts_with('%'));
    let size = nums(lines.next().ok_or_else(|| Error::Format("missing size line".into()))?)?;
    let [rows, cols, nnz] = size[..] else {
        return Err(Error::Format("size line needs three integers".into()));
    };
    let mut m = BitMatrix::zeros(rows, cols);
    let mut seen = 0;
    for l in lines {
        let v: Vec<&str> = l.split_whitespace().collect();
        if v.len() < 2 {
            return Err(Error::Format(format!("bad entry line `{l}`")));
        }
        let r: usize = v[0].parse().map_err(|_| Error::Format(format!("bad row in `{l}`")))?;
        let c: usize = v[1].parse().map_err(|_| Error::Format(format!("bad col in `{l}`")))?;
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(Error::Format(format!("entry ({r},{c}) out of range")));
        }
        // value column, if any, is taken mod 2
        let val = v.get(2).map_or(Ok(1), |t| t.parse::<i64>().map_err(|_| Error::Format(format!("bad value in `{l}`"))))?;
        if val.rem_euclid(2) == 1 {
            m.flip(r - 1, c - 1);
        }
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::Format(format!("expected {nnz} entries, found {seen}")));
    }
    Ok(m)
}

pub fn to_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let colw = m.col_weights();
    let roww: Vec<usize> = (0..m.rows()).map(|r| m.row_weight(r)).collect();
    let maxc = colw.iter().copied().max().unwrap_or(0);
    let maxr = roww.iter().copied().max().unwrap_or(0);
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!("{} {}\n{} {}\n{}\n{}\n", m.cols(), m.rows(), maxc, maxr, join(&colw), join(&roww));
    let padded = |ones: Vec<usize>, width: usize| {
        let mut v: Vec<usize> = ones.into_iter().map(|i| i + 1).collect();
        v.resize(width, 0);
        join(&v)
    };
    for c in 0..m.cols() {
        let _ = writeln!(s, "{}", padded(t.row_ones(c).collect(), maxc));
    }
    for r in 0..m.rows() {
        let _ = writeln!(s, "{}", padded(m.row_ones(r).collect(), maxr));
    }
    s
}

pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut next = |what: &str| -> Result<Vec<usize>> {
        nums(lines.next().ok_or_else(|| Error::Format(format!("alist truncated at {what}")))?)
    };
    let dims = next("dimensions")?;
    let [cols, rows] = dims[..] else { return Err(Error::Format("alist dimension line".into())) };
    next("max weights")?;
    let colw = next("column weights")?;
    let roww = next("row weights")?;
    if colw.len() != cols || roww.len() != rows {
        return Err(Error::Format("alist weight list lengths".into()));
    }
    let mut m = BitMatrix::zeros(rows, cols);
    for (c, &w) in colw.iter().enumerate() {
        let entries = next("column lists")?;
        let live: Vec<usize> = entries.into_iter().filter(|&e| e != 0).collect();
        if live.len() != w {
            return Err(Error::Format(format!("column {c} lists {} entries, weight {w}", live.len())));
        }
        for r in live {
            if r > rows {
                return Err(Error::Format(format!("row index {r} out of range")));
            }
            m.set(r - 1, c, true);
        }
    }
    // row lists must agree with the column lists
    for (r, &w) in roww.iter().enumerate() {
        let live: Vec<usize> = next("row lists")?.into_iter().filter(|&e| e != 0).map(|e| e - 1).collect();
        if live.len() != w || live.iter().any(|&c| c >= cols || !m.get(r, c)) {
            return Err(Error::Format(format!("row {r} list disagrees with column lists")));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_market_layout() {
        let m = BitMatrix::from_strs(&["101", "010"]);
        let s = to_matrix_market(&m);
        assert_eq!(s, format!("{MM_HEADER}\n2 3 3\n1 1\n1 3\n2 2\n"));
        assert_eq!(from_matrix_market(&s).unwrap(), m);
    }

    #[test]
    fn alist_roundtrip() {
        let m = BitMatrix::from_strs(&["1101000", "0110100", "0011010"]);
        let s = to_alist(&m);
        assert!(s.starts_with("7 3\n2 3\n"));
        assert_eq!(from_alist(&s).unwrap(), m);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(from_matrix_market("garbage").is_err());
        assert!(from_matrix_market(&format!("{MM_HEADER}\n2 2 1\n3 1\n")).is_err());
        assert!(from_alist("3 1\n1 1\n1 1\n").is_err());
    }
}
