//! Quasi-cyclic base graphs: shift tables, lifting and the base-graph
//! file format (`Z`, then `rows cols`, then row-wise shifts with -1 for
//! zero blocks).

use crate::error::{Error, Result};
use crate::ldpc::matrix::{ParityCheckMatrix, QcInfo};
use std::fmt::Write as _;
use std::path::Path;

/// A shift table together with its lifting size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    pub z: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major; -1 marks the zero block, s in [0, z) a shifted identity.
    pub shifts: Vec<i32>,
}

impl BaseGraph {
    pub fn new(z: usize, rows: usize, cols: usize, shifts: Vec<i32>) -> Result<Self> {
        if z == 0 {
            return Err(Error::domain("lifting size must be positive"));
        }
        if shifts.len() != rows * cols {
            return Err(Error::construction(format!(
                "shift table has {} entries for a {rows}x{cols} base graph",
                shifts.len()
            )));
        }
        if let Some(&bad) = shifts.iter().find(|&&s| s < -1 || s >= z as i32) {
            return Err(Error::domain(format!(
                "shift {bad} outside [-1, {z})"
            )));
        }
        Ok(BaseGraph {
            z,
            rows,
            cols,
            shifts,
        })
    }

    pub fn shift(&self, r: usize, c: usize) -> i32 {
        self.shifts[r * self.cols + c]
    }
}

/// Expands every non-negative shift s into the Z x Z identity cyclically
/// right-shifted by s (block row r carries a one at column (r + s) mod Z);
/// -1 expands to the zero block.
pub fn expand_base_graph(bg: &BaseGraph) -> Result<ParityCheckMatrix> {
    let z = bg.z;
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); bg.rows * z];
    for br in 0..bg.rows {
        for bc in 0..bg.cols {
            let s = bg.shift(br, bc);
            if s < 0 {
                continue;
            }
            for r in 0..z {
                let col = bc * z + ((r + s as usize) % z);
                rows[br * z + r].push(col as u32);
            }
        }
    }
    Ok(ParityCheckMatrix::from_rows(bg.rows * z, bg.cols * z, rows)?.with_qc(QcInfo {
        base_rows: bg.rows,
        base_cols: bg.cols,
        z,
        shifts: bg.shifts.clone(),
    }))
}

/// Reads the shift table back from an expanded matrix by block-wise
/// inspection; returns an error when a block is not a shifted identity.
pub fn recover_base_graph(h: &ParityCheckMatrix, z: usize) -> Result<BaseGraph> {
    if z == 0 || h.num_rows() % z != 0 || h.num_cols() % z != 0 {
        return Err(Error::domain("matrix dimensions are not multiples of z"));
    }
    let (rows, cols) = (h.num_rows() / z, h.num_cols() / z);
    let mut shifts = vec![-1i32; rows * cols];
    for br in 0..rows {
        // Shift candidates from block row 0 of this base row.
        for &c in h.row(br * z) {
            let bc = c as usize / z;
            let s = (c as usize - bc * z + z) % z;
            let cell = &mut shifts[br * cols + bc];
            if *cell != -1 {
                return Err(Error::construction(format!(
                    "block ({br},{bc}) has more than one diagonal"
                )));
            }
            *cell = s as i32;
        }
        // Verify the remaining z-1 rows follow the circulant pattern.
        for r in 1..z {
            let expected: Vec<u32> = {
                let mut e: Vec<u32> = (0..cols)
                    .filter(|&bc| shifts[br * cols + bc] >= 0)
                    .map(|bc| {
                        let s = shifts[br * cols + bc] as usize;
                        (bc * z + (r + s) % z) as u32
                    })
                    .collect();
                e.sort_unstable();
                e
            };
            if h.row(br * z + r) != expected.as_slice() {
                return Err(Error::construction(format!(
                    "base row {br} is not quasi-cyclic at offset {r}"
                )));
            }
        }
    }
    BaseGraph::new(z, rows, cols, shifts)
}

impl BaseGraph {
    /// Serializes to the base-graph text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.z);
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for r in 0..self.rows {
            let parts: Vec<String> = (0..self.cols)
                .map(|c| self.shift(r, c).to_string())
                .collect();
            let _ = writeln!(s, "{}", parts.join(" "));
        }
        s
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lz, zline) = lines.next().ok_or_else(|| perr(1, "empty file".into()))?;
        let z: usize = zline
            .trim()
            .parse()
            .map_err(|e| perr(lz + 1, format!("bad z: {e}")))?;
        let (ld, dims) = lines.next().ok_or_else(|| perr(lz + 1, "missing dims".into()))?;
        let mut it = dims.split_whitespace();
        let rows: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(ld + 1, "bad rows".into()))?;
        let cols: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(ld + 1, "bad cols".into()))?;
        let mut shifts = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (lr, line) = lines
                .next()
                .ok_or_else(|| perr(0, "missing shift row".into()))?;
            for tok in line.split_whitespace() {
                shifts.push(
                    tok.parse::<i32>()
                        .map_err(|e| perr(lr + 1, format!("bad shift: {e}")))?,
                );
            }
        }
        BaseGraph::new(z, rows, cols, shifts)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_text(&text, &path.display().to_string())
    }
}
