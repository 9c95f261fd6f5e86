//! Result persistence: CSV rows per SNR point, JSON with the embedded
//! configuration, and CSV ingestion for plotting.

use crate::bounds::BoundPoint;
use crate::error::{Error, Result};
use crate::sim::SimResult;
use std::fmt::Write as _;
use std::path::Path;

pub const CSV_HEADER: &str =
    "scheme,ebn0_db,frames,frame_errors,bit_errors,fer,ber,ci_low,ci_high,seconds";

fn fmt_f64(v: f64) -> String {
    // Shortest round-trip form, locale-free.
    format!("{v}")
}

/// Serializes one result as CSV (header plus one row per SNR point).
pub fn result_to_csv(result: &SimResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CSV_HEADER}");
    for p in &result.points {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            result.scheme_label,
            fmt_f64(p.ebn0_db),
            p.frames,
            p.frame_errors,
            p.bit_errors,
            fmt_f64(p.fer),
            fmt_f64(p.ber),
            fmt_f64(p.ci_low),
            fmt_f64(p.ci_high),
            fmt_f64(p.seconds),
        );
    }
    s
}

/// Bound curves share the CSV schema, flagged by the `bound:` scheme
/// prefix with empty counters.
pub fn bound_to_csv(points: &[BoundPoint]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CSV_HEADER}");
    for p in points {
        let _ = writeln!(
            s,
            "bound:{}:{},{},0,0,0,{},{},{},{},0",
            p.n,
            p.k,
            fmt_f64(p.ebn0_db),
            fmt_f64(p.fer_bound),
            fmt_f64(p.fer_bound),
            fmt_f64(p.fer_bound),
            fmt_f64(p.fer_bound),
        );
    }
    s
}

pub fn write_csv(result: &SimResult, path: &Path) -> Result<()> {
    std::fs::write(path, result_to_csv(result))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn result_to_json(result: &SimResult) -> String {
    serde_json::to_string_pretty(result).expect("result serializes")
}

pub fn write_json(result: &SimResult, path: &Path) -> Result<()> {
    std::fs::write(path, result_to_json(result))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn read_json(path: &Path) -> Result<SimResult> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: 0,
        msg: e.to_string(),
    })
}

/// One parsed CSV series (for plotting): scheme label plus
/// (ebn0, fer, ber) rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvSeries {
    pub scheme: String,
    pub rows: Vec<CsvRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub ebn0_db: f64,
    pub fer: f64,
    pub ber: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Parses result CSV text (one or more schemes per file).
pub fn parse_csv(text: &str, origin: &str) -> Result<Vec<CsvSeries>> {
    let perr = |line: usize, msg: String| Error::Parse {
        path: origin.to_string(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| perr(1, "empty csv".to_string()))?;
    if header.trim() != CSV_HEADER {
        return Err(perr(1, format!("unexpected header '{header}'")));
    }
    let mut series: Vec<CsvSeries> = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(perr(idx + 1, format!("expected 10 fields, got {}", fields.len())));
        }
        let f = |i: usize| -> Result<f64> {
            fields[i]
                .trim()
                .parse()
                .map_err(|e| perr(idx + 1, format!("bad number '{}': {e}", fields[i])))
        };
        let row = CsvRow {
            ebn0_db: f(1)?,
            fer: f(5)?,
            ber: f(6)?,
            ci_low: f(7)?,
            ci_high: f(8)?,
        };
        let scheme = fields[0].trim().to_string();
        match series.iter_mut().find(|s| s.scheme == scheme) {
            Some(s) => s.rows.push(row),
            None => series.push(CsvSeries {
                scheme,
                rows: vec![row],
            }),
        }
    }
    Ok(series)
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvSeries>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_csv(&text, &path.display().to_string())
}
