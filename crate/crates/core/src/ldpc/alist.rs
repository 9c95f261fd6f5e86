//! The alist sparse-matrix text format.
//!
//! Layout: `n m`, `max_col_deg max_row_deg`, the n column degrees, the m
//! row degrees, then one line per column and one line per row listing
//! 1-based neighbour indices. Writers pad irregular lines with zeros; the
//! parser accepts both padded and unpadded lines.

use crate::error::{Error, Result};
use crate::ldpc::matrix::ParityCheckMatrix;
use std::fmt::Write as _;
use std::path::Path;

fn parse_err(origin: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: origin.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Parses alist text into a matrix, verifying declared degrees.
pub fn parse_alist(text: &str, origin: &str) -> Result<ParityCheckMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let mut next_ints = |expect: &str| -> Result<(usize, Vec<i64>)> {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(origin, 0, format!("unexpected end of file, expected {expect}")))?;
        let vals: std::result::Result<Vec<i64>, _> =
            line.split_whitespace().map(|t| t.parse::<i64>()).collect();
        match vals {
            Ok(v) => Ok((idx + 1, v)),
            Err(e) => Err(parse_err(origin, idx + 1, format!("bad integer: {e}"))),
        }
    };

    let (ln, dims) = next_ints("matrix dimensions")?;
    if dims.len() != 2 || dims[0] <= 0 || dims[1] <= 0 {
        return Err(parse_err(origin, ln, "expected 'n m' with positive sizes"));
    }
    let (n, m) = (dims[0] as usize, dims[1] as usize);
    let (_, _maxdeg) = next_ints("max degrees")?;
    let (ln_cd, col_degs) = next_ints("column degrees")?;
    if col_degs.len() != n {
        return Err(parse_err(origin, ln_cd, format!("expected {n} column degrees")));
    }
    let (ln_rd, row_degs) = next_ints("row degrees")?;
    if row_degs.len() != m {
        return Err(parse_err(origin, ln_rd, format!("expected {m} row degrees")));
    }

    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (c, &deg) in col_degs.iter().enumerate() {
        let (ln, entries) = next_ints("column adjacency")?;
        let live: Vec<i64> = entries.into_iter().filter(|&x| x != 0).collect();
        if live.len() != deg as usize {
            return Err(parse_err(
                origin,
                ln,
                format!("column {c} lists {} entries, degree says {deg}", live.len()),
            ));
        }
        let mut rows_of_col = Vec::with_capacity(live.len());
        for x in live {
            if x < 1 || x as usize > m {
                return Err(parse_err(origin, ln, format!("row index {x} out of range")));
            }
            rows_of_col.push((x - 1) as u32);
        }
        cols.push(rows_of_col);
    }

    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (r, &deg) in row_degs.iter().enumerate() {
        let (ln, entries) = next_ints("row adjacency")?;
        let live: Vec<i64> = entries.into_iter().filter(|&x| x != 0).collect();
        if live.len() != deg as usize {
            return Err(parse_err(
                origin,
                ln,
                format!("row {r} lists {} entries, degree says {deg}", live.len()),
            ));
        }
        for x in live {
            if x < 1 || x as usize > n {
                return Err(parse_err(origin, ln, format!("column index {x} out of range")));
            }
            rows[r].push((x - 1) as u32);
        }
    }

    let h = ParityCheckMatrix::from_rows(m, n, rows)?;
    // Cross-check the two adjacency sections.
    for (c, rows_of_col) in cols.iter().enumerate() {
        let mut sorted = rows_of_col.clone();
        sorted.sort_unstable();
        if h.col(c) != sorted.as_slice() {
            return Err(parse_err(
                origin,
                0,
                format!("column {c} adjacency disagrees with the row section"),
            ));
        }
    }
    Ok(h)
}

/// Serializes a matrix in padded (MacKay-style) alist form.
pub fn write_alist(h: &ParityCheckMatrix) -> String {
    let n = h.num_cols();
    let m = h.num_rows();
    // Pad width at least 1 so degree-0 nodes still emit a "0" entry
    // rather than a blank line.
    let max_col = (0..n).map(|c| h.col(c).len()).max().unwrap_or(0).max(1);
    let max_row = (0..m).map(|r| h.row(r).len()).max().unwrap_or(0).max(1);
    let mut s = String::new();
    let _ = writeln!(s, "{n} {m}");
    let _ = writeln!(s, "{max_col} {max_row}");
    let degs: Vec<String> = (0..n).map(|c| h.col(c).len().to_string()).collect();
    let _ = writeln!(s, "{}", degs.join(" "));
    let degs: Vec<String> = (0..m).map(|r| h.row(r).len().to_string()).collect();
    let _ = writeln!(s, "{}", degs.join(" "));
    for c in 0..n {
        let mut parts: Vec<String> = h.col(c).iter().map(|&r| (r + 1).to_string()).collect();
        parts.resize(max_col, "0".to_string());
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    for r in 0..m {
        let mut parts: Vec<String> = h.row(r).iter().map(|&c| (c + 1).to_string()).collect();
        parts.resize(max_row, "0".to_string());
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

/// Reads an alist file from disk.
pub fn load_alist(path: &Path) -> Result<ParityCheckMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_alist(&text, &path.display().to_string())
}

/// Writes an alist file to disk.
pub fn save_alist(h: &ParityCheckMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, write_alist(h)).map_err(|e| Error::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming_alist() -> String {
        // Hamming(7,4): rows {0,3,4,6} {1,3,5,6} {2,4,5,6}, 1-based below.
        concat!(
            "7 3\n",
            "3 4\n",
            "1 1 1 2 2 2 3\n",
            "4 4 4\n",
            "1 0 0\n",
            "2 0 0\n",
            "3 0 0\n",
            "1 2 0\n",
            "1 3 0\n",
            "2 3 0\n",
            "1 2 3\n",
            "1 4 5 7\n",
            "2 4 6 7\n",
            "3 5 6 7\n",
        )
        .to_string()
    }

    #[test]
    fn parses_hamming() {
        let h = parse_alist(&hamming_alist(), "test").unwrap();
        assert_eq!(h.num_rows(), 3);
        assert_eq!(h.num_cols(), 7);
        assert_eq!(h.num_edges(), 12);
        assert_eq!(h.row(0), &[0, 3, 4, 6]);
    }

    #[test]
    fn degree_lists_must_match_headers() {
        let bad = hamming_alist().replace("1 1 1 2 2 2 3", "1 1 1 2 2 2 2");
        let err = parse_alist(&bad, "test").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(parse_alist("", "test").is_err());
        assert!(parse_alist("\n\n", "test").is_err());
    }

    #[test]
    fn out_of_range_index_reports_line() {
        let bad = hamming_alist().replace("1 4 5 7", "1 4 5 9");
        match parse_alist(&bad, "test") {
            Err(Error::Parse { line, .. }) => assert!(line > 0),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_preserves_matrix() {
        let h = parse_alist(&hamming_alist(), "test").unwrap();
        let text = write_alist(&h);
        let back = parse_alist(&text, "round").unwrap();
        assert_eq!(back, h);
        // A second write is byte-identical.
        assert_eq!(write_alist(&back), text);
    }
}
