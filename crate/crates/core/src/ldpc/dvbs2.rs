//! DVB-S2 LDPC codes for normal FECFRAMEs, built from the standard's
//! parity address tables (ETSI EN 302 307-1 section 5.3.2.1, Annex B).
//!
//! Systematic bit j (group w = j mod 360, table row t = j div 360) checks
//! the rows (x + w*q) mod m for every address x in table row t; the parity
//! tail is the usual accumulator staircase. Layers for layered decoding
//! are the natural 360-row blocks.

use crate::error::{Error, Result};
use crate::ldpc::encode::LdpcCode;
use crate::ldpc::matrix::ParityCheckMatrix;

const R12_TABLE: &str = include_str!("../../assets/dvbs2/r12_normal.txt");
const R89_TABLE: &str = include_str!("../../assets/dvbs2/r89_normal.txt");

/// Code rates of the normal FECFRAME (64800 bits) used in the figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dvbs2Rate {
    R1_2,
    R8_9,
}

impl Dvbs2Rate {
    fn table_text(self) -> &'static str {
        match self {
            Dvbs2Rate::R1_2 => R12_TABLE,
            Dvbs2Rate::R8_9 => R89_TABLE,
        }
    }

    pub fn rate(self) -> f64 {
        match self {
            Dvbs2Rate::R1_2 => 0.5,
            Dvbs2Rate::R8_9 => 8.0 / 9.0,
        }
    }
}

/// Parsed address table.
struct AddressTable {
    n: usize,
    k: usize,
    q: usize,
    rows: Vec<Vec<usize>>,
}

fn parse_table(text: &str, origin: &str) -> Result<AddressTable> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse {
            path: origin.into(),
            line: 1,
            msg: "empty table".into(),
        })?;
    let head: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().unwrap_or(0))
        .collect();
    if head.len() != 3 {
        return Err(Error::Parse {
            path: origin.into(),
            line: 1,
            msg: "expected 'n k q' header".into(),
        });
    }
    let (n, k, q) = (head[0], head[1], head[2]);
    let mut rows = Vec::with_capacity(k / 360);
    for (idx, line) in lines {
        let vals: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let vals = vals.map_err(|e| Error::Parse {
            path: origin.into(),
            line: idx + 1,
            msg: format!("bad address: {e}"),
        })?;
        rows.push(vals);
    }
    if rows.len() != k / 360 {
        return Err(Error::Parse {
            path: origin.into(),
            line: 0,
            msg: format!("expected {} address groups, found {}", k / 360, rows.len()),
        });
    }
    Ok(AddressTable { n, k, q, rows })
}

/// Builds the parity-check matrix for a normal-frame DVB-S2 code.
pub fn dvbs2_matrix(rate: Dvbs2Rate) -> Result<ParityCheckMatrix> {
    let table = parse_table(rate.table_text(), "dvbs2 table")?;
    let m = table.n - table.k;
    debug_assert_eq!(m, table.q * 360);
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (t, addresses) in table.rows.iter().enumerate() {
        for w in 0..360 {
            let j = (t * 360 + w) as u32;
            for &x in addresses {
                rows[(x + w * table.q) % m].push(j);
            }
        }
    }
    rows[0].push(table.k as u32);
    for r in 1..m {
        rows[r].push((table.k + r - 1) as u32);
        rows[r].push((table.k + r) as u32);
    }
    // Layered schedule: even rows then odd rows. A row-monotone order
    // only propagates information forward along the accumulator chain
    // within a sweep; the two-phase order crosses every staircase edge in
    // one direction or the other each sweep, which the few-iteration
    // operating points need.
    let layers: Vec<Vec<u32>> = vec![
        (0..m as u32).step_by(2).collect(),
        (1..m as u32).step_by(2).collect(),
    ];
    Ok(ParityCheckMatrix::from_rows(m, table.n, rows)?.with_layers(layers))
}

/// The complete code (matrix plus staircase encoder).
pub fn dvbs2_code(rate: Dvbs2Rate) -> Result<LdpcCode> {
    LdpcCode::new(dvbs2_matrix(rate)?)
}
