//! Polar code specifications: frozen/information sets, CRC pre-transform,
//! length matching, encoding, and the code-spec file format.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::{LlrVector, LLR_SATURATION};
use crate::outer::crc::CrcSpec;
use crate::polar::construct::{
    density_evolution_reliabilities, select_info_set, ReliabilitySequence,
};
use crate::polar::transform::transform_in_place;
use std::fmt::Write as _;
use std::path::Path;

/// Length matching applied after polar encoding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LengthMatch {
    #[default]
    None,
    /// Punctured codeword positions are simply not transmitted; the
    /// receiver knows nothing about them (LLR 0).
    Punctured(Vec<usize>),
    /// Shortened codeword positions are known zeros; the receiver is
    /// certain about them (LLR +saturation).
    Shortened(Vec<usize>),
}

impl LengthMatch {
    pub fn positions(&self) -> &[usize] {
        match self {
            LengthMatch::None => &[],
            LengthMatch::Punctured(p) | LengthMatch::Shortened(p) => p,
        }
    }
}

/// A complete polar code description.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCodeSpec {
    n_log2: u32,
    /// Sorted indices of the non-frozen synthetic channels (CRC bits, when
    /// present, occupy the tail of this set in index order).
    info_set: Vec<usize>,
    frozen_mask: Vec<bool>,
    crc: Option<CrcSpec>,
    length_match: LengthMatch,
    design_snr_db: f64,
    /// Block profile of the affine automorphism group, present only for
    /// automorphism-aware designs.
    automorphism_profile: Option<Vec<usize>>,
}

impl PolarCodeSpec {
    pub fn new(
        n_log2: u32,
        info_set: Vec<usize>,
        crc: Option<CrcSpec>,
        length_match: LengthMatch,
        design_snr_db: f64,
    ) -> Result<Self> {
        if n_log2 == 0 || n_log2 > 24 {
            return Err(Error::construction(format!(
                "log2 block length {n_log2} out of range"
            )));
        }
        let n = 1usize << n_log2;
        let mut sorted = info_set;
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() > n || sorted.last().is_some_and(|&i| i >= n) {
            return Err(Error::construction(
                "information set does not fit the block length".to_string(),
            ));
        }
        if let Some(crc) = &crc {
            if crc.len() >= sorted.len() {
                return Err(Error::construction(
                    "CRC is at least as long as the information set".to_string(),
                ));
            }
        }
        let mut frozen_mask = vec![true; n];
        for &i in &sorted {
            frozen_mask[i] = false;
        }
        let spec = PolarCodeSpec {
            n_log2,
            info_set: sorted,
            frozen_mask,
            crc,
            length_match,
            design_snr_db,
            automorphism_profile: None,
        };
        spec.validate_length_match()?;
        Ok(spec)
    }

    fn validate_length_match(&self) -> Result<()> {
        let n = self.block_len();
        let positions = self.length_match.positions();
        let mut seen = vec![false; n];
        for &p in positions {
            if p >= n {
                return Err(Error::construction(format!(
                    "length-match position {p} out of range"
                )));
            }
            if seen[p] {
                return Err(Error::construction(format!(
                    "length-match position {p} repeated"
                )));
            }
            seen[p] = true;
        }
        if let LengthMatch::Shortened(positions) = &self.length_match {
            // c_p = xor of u_i over all i whose bit support contains p, so a
            // shortened position is a known zero exactly when every such
            // u_i is frozen.
            for &p in positions {
                for i in p..n {
                    if i & p == p && !self.frozen_mask[i] {
                        return Err(Error::construction(format!(
                            "shortened position {p} depends on information bit u_{i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Construction from density evolution: the K most reliable channels
    /// at the given design Eb/N0.
    pub fn from_density_evolution(
        n_log2: u32,
        k: usize,
        design_snr_db: f64,
        crc: Option<CrcSpec>,
    ) -> Result<Self> {
        let rate = k as f64 / (1u64 << n_log2) as f64;
        let sigma = crate::channel::ebn0_to_sigma(design_snr_db, rate)?;
        let rel = density_evolution_reliabilities(n_log2, sigma)?;
        let info = select_info_set(&rel, k)?;
        PolarCodeSpec::new(n_log2, info, crc, LengthMatch::None, design_snr_db)
    }

    /// Construction from a (possibly nested) reliability sequence.
    pub fn from_sequence(
        seq: &ReliabilitySequence,
        n_log2: u32,
        k: usize,
        crc: Option<CrcSpec>,
    ) -> Result<Self> {
        if seq.block_len() != (1usize << n_log2) {
            return Err(Error::construction(format!(
                "sequence length {} does not match 2^{n_log2}",
                seq.block_len()
            )));
        }
        PolarCodeSpec::new(
            n_log2,
            seq.info_set(k)?,
            crc,
            LengthMatch::None,
            seq.design_snr_db,
        )
    }

    pub fn with_length_match(mut self, lm: LengthMatch) -> Result<Self> {
        self.length_match = lm;
        self.validate_length_match()?;
        Ok(self)
    }

    pub(crate) fn set_automorphism_profile(&mut self, profile: Vec<usize>) {
        self.automorphism_profile = Some(profile);
    }

    pub fn n_log2(&self) -> u32 {
        self.n_log2
    }

    /// Mother code block length N = 2^n.
    pub fn block_len(&self) -> usize {
        1usize << self.n_log2
    }

    /// Transmitted length after length matching.
    pub fn tx_len(&self) -> usize {
        self.block_len() - self.length_match.positions().len()
    }

    /// Number of non-frozen channels (CRC bits included).
    pub fn dimension(&self) -> usize {
        self.info_set.len()
    }

    /// Number of message bits carried per block (CRC bits excluded).
    pub fn payload_len(&self) -> usize {
        self.dimension() - self.crc.map_or(0, |c| c.len())
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    pub fn crc(&self) -> Option<&CrcSpec> {
        self.crc.as_ref()
    }

    pub fn length_match(&self) -> &LengthMatch {
        &self.length_match
    }

    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    pub fn automorphism_profile(&self) -> Option<&[usize]> {
        self.automorphism_profile.as_deref()
    }

    /// Places message (and CRC) bits on the information set and applies
    /// the polar transform. Returns the full-length mother codeword.
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.payload_len() {
            return Err(Error::domain(format!(
                "message length {} does not match payload length {}",
                message.len(),
                self.payload_len()
            )));
        }
        let with_crc = match &self.crc {
            Some(crc) => crc.append(message),
            None => message.clone(),
        };
        let mut u = BitVector::zeros(self.block_len());
        for (&pos, &bit) in self.info_set.iter().zip(with_crc.iter()) {
            u.set(pos, bit);
        }
        let mut cw = u;
        transform_in_place(cw.bits_mut());
        if let LengthMatch::Shortened(positions) = &self.length_match {
            for &p in positions {
                if cw[p] != 0 {
                    return Err(Error::construction(format!(
                        "shortened position {p} is not a known zero under this frozen set"
                    )));
                }
            }
        }
        Ok(cw)
    }

    /// Drops length-matched positions from a mother codeword, producing
    /// the transmitted vector.
    pub fn tx_codeword(&self, mother: &BitVector) -> Result<BitVector> {
        if mother.len() != self.block_len() {
            return Err(Error::domain("mother codeword length mismatch"));
        }
        let drop = self.length_match.positions();
        if drop.is_empty() {
            return Ok(mother.clone());
        }
        let mut dropped = vec![false; mother.len()];
        for &p in drop {
            dropped[p] = true;
        }
        Ok(mother
            .iter()
            .enumerate()
            .filter(|&(i, _)| !dropped[i])
            .map(|(_, &b)| b)
            .collect())
    }

    /// Re-inserts length-matched positions into received LLRs: punctured
    /// positions get LLR 0 (unknown), shortened positions +saturation
    /// (known zero).
    pub fn rx_expand_llr(&self, llr: &LlrVector) -> Result<LlrVector> {
        if llr.len() != self.tx_len() {
            return Err(Error::domain(format!(
                "received length {} does not match transmitted length {}",
                llr.len(),
                self.tx_len()
            )));
        }
        let positions = self.length_match.positions();
        if positions.is_empty() {
            return Ok(llr.clone());
        }
        let fill = match self.length_match {
            LengthMatch::Punctured(_) => 0.0,
            LengthMatch::Shortened(_) => LLR_SATURATION,
            LengthMatch::None => unreachable!(),
        };
        let mut out = vec![f64::NAN; self.block_len()];
        for &p in positions {
            out[p] = fill;
        }
        let mut src = llr.iter();
        for slot in out.iter_mut() {
            if slot.is_nan() {
                *slot = *src.next().expect("length accounted");
            }
        }
        Ok(LlrVector::from_values(out))
    }

    /// Extracts the message bits (CRC stripped) from a decoded u-vector.
    pub fn message_from_u(&self, u: &BitVector) -> BitVector {
        self.info_set[..self.payload_len()]
            .iter()
            .map(|&i| u[i])
            .collect()
    }

    /// Checks the CRC over the non-frozen part of a decoded u-vector.
    /// `None` when the code carries no CRC.
    pub fn crc_ok_from_u(&self, u: &BitVector) -> Option<bool> {
        self.crc.as_ref().map(|crc| {
            let word: BitVector = self.info_set.iter().map(|&i| u[i]).collect();
            crc.check(&word)
        })
    }

    /// True iff `word` is a codeword of the mother polar code (frozen
    /// channels all decode to zero). The CRC is not consulted.
    pub fn is_codeword(&self, word: &BitVector) -> bool {
        if word.len() != self.block_len() {
            return false;
        }
        let mut u = word.clone();
        transform_in_place(u.bits_mut());
        self.frozen_mask
            .iter()
            .zip(u.iter())
            .all(|(&frozen, &bit)| !frozen || bit == 0)
    }
}

// ---------------------------------------------------------------------------
// Code-spec file format
// ---------------------------------------------------------------------------
//
//   polar-code v1
//   n <log2 N>
//   k <dimension>
//   design_snr_db <float>
//   info_set <run-length encoded index set, e.g. 3,5-7>
//   crc <degree> <hex poly>          (optional)
//   length_match none | punctured <rle> | shortened <rle>
//   aut_profile <comma separated>     (optional)

/// Run-length encodes a sorted index set as `a,b-c,d`.
pub fn encode_index_ranges(sorted: &[usize]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < sorted.len() {
        let start = sorted[i];
        let mut end = start;
        while i + 1 < sorted.len() && sorted[i + 1] == end + 1 {
            i += 1;
            end = sorted[i];
        }
        if !out.is_empty() {
            out.push(',');
        }
        if start == end {
            let _ = write!(out, "{start}");
        } else {
            let _ = write!(out, "{start}-{end}");
        }
        i += 1;
    }
    out
}

/// Parses the run-length encoding produced by [`encode_index_ranges`].
pub fn decode_index_ranges(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if s.trim().is_empty() {
        return Ok(out);
    }
    for part in s.trim().split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a
                    .parse()
                    .map_err(|_| Error::domain(format!("bad range start '{a}'")))?;
                let b: usize = b
                    .parse()
                    .map_err(|_| Error::domain(format!("bad range end '{b}'")))?;
                if b < a {
                    return Err(Error::domain(format!("inverted range '{part}'")));
                }
                out.extend(a..=b);
            }
            None => out.push(
                part.parse()
                    .map_err(|_| Error::domain(format!("bad index '{part}'")))?,
            ),
        }
    }
    Ok(out)
}

impl PolarCodeSpec {
    /// Serializes to the code-spec text format (bit-exact round trip).
    pub fn to_spec_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "polar-code v1");
        let _ = writeln!(s, "n {}", self.n_log2);
        let _ = writeln!(s, "k {}", self.dimension());
        let _ = writeln!(s, "design_snr_db {}", self.design_snr_db);
        let _ = writeln!(s, "info_set {}", encode_index_ranges(&self.info_set));
        if let Some(crc) = &self.crc {
            // Conventional form with the leading term included.
            let _ = writeln!(s, "crc {} 0x{:X}", crc.degree, crc.poly | (1 << crc.degree));
        }
        match &self.length_match {
            LengthMatch::None => {
                let _ = writeln!(s, "length_match none");
            }
            LengthMatch::Punctured(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                let _ = writeln!(s, "length_match punctured {}", encode_index_ranges(&sorted));
            }
            LengthMatch::Shortened(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                let _ = writeln!(s, "length_match shortened {}", encode_index_ranges(&sorted));
            }
        }
        if let Some(profile) = &self.automorphism_profile {
            let parts: Vec<String> = profile.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "aut_profile {}", parts.join(","));
        }
        s
    }

    /// Parses the code-spec text format.
    pub fn from_spec_string(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| err(1, "empty file".to_string()))?;
        if header.trim() != "polar-code v1" {
            return Err(err(1, format!("unexpected header '{header}'")));
        }
        let mut n_log2 = None;
        let mut k = None;
        let mut design = None;
        let mut info = None;
        let mut crc = None;
        let mut lm = LengthMatch::None;
        let mut profile = None;
        for (idx, raw) in lines {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| err(idx + 1, format!("malformed line '{line}'")))?;
            let value = value.trim();
            match key {
                "n" => {
                    n_log2 = Some(
                        value
                            .parse::<u32>()
                            .map_err(|e| err(idx + 1, format!("bad n: {e}")))?,
                    )
                }
                "k" => {
                    k = Some(
                        value
                            .parse::<usize>()
                            .map_err(|e| err(idx + 1, format!("bad k: {e}")))?,
                    )
                }
                "design_snr_db" => {
                    design = Some(
                        value
                            .parse::<f64>()
                            .map_err(|e| err(idx + 1, format!("bad design snr: {e}")))?,
                    )
                }
                "info_set" => {
                    info = Some(
                        decode_index_ranges(value).map_err(|e| err(idx + 1, e.to_string()))?,
                    )
                }
                "crc" => {
                    let (deg, poly) = value
                        .split_once(' ')
                        .ok_or_else(|| err(idx + 1, "crc needs degree and poly".to_string()))?;
                    let degree: u32 = deg
                        .parse()
                        .map_err(|e| err(idx + 1, format!("bad crc degree: {e}")))?;
                    let poly = u64::from_str_radix(poly.trim_start_matches("0x"), 16)
                        .map_err(|e| err(idx + 1, format!("bad crc poly: {e}")))?;
                    crc = Some(CrcSpec::new(degree, poly).map_err(|e| err(idx + 1, e.to_string()))?);
                }
                "length_match" => {
                    lm = match value.split_once(' ') {
                        None if value == "none" => LengthMatch::None,
                        Some(("punctured", rle)) => LengthMatch::Punctured(
                            decode_index_ranges(rle).map_err(|e| err(idx + 1, e.to_string()))?,
                        ),
                        Some(("shortened", rle)) => LengthMatch::Shortened(
                            decode_index_ranges(rle).map_err(|e| err(idx + 1, e.to_string()))?,
                        ),
                        _ => return Err(err(idx + 1, format!("bad length_match '{value}'"))),
                    };
                }
                "aut_profile" => {
                    let parsed: std::result::Result<Vec<usize>, _> =
                        value.split(',').map(|p| p.trim().parse()).collect();
                    profile =
                        Some(parsed.map_err(|e| err(idx + 1, format!("bad profile: {e}")))?);
                }
                other => return Err(err(idx + 1, format!("unknown key '{other}'"))),
            }
        }
        let n_log2 = n_log2.ok_or_else(|| err(0, "missing n".to_string()))?;
        let info = info.ok_or_else(|| err(0, "missing info_set".to_string()))?;
        if let Some(k) = k {
            if k != info.len() {
                return Err(err(0, format!("k = {k} but info_set has {}", info.len())));
            }
        }
        let mut spec = PolarCodeSpec::new(
            n_log2,
            info,
            crc,
            lm,
            design.ok_or_else(|| err(0, "missing design_snr_db".to_string()))?,
        )?;
        if let Some(p) = profile {
            spec.set_automorphism_profile(p);
        }
        Ok(spec)
    }

    pub fn write_spec_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_spec_string())
            .map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn read_spec_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_spec_string(&text, &path.display().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_spec() -> PolarCodeSpec {
        PolarCodeSpec::new(3, vec![3, 5, 6, 7], None, LengthMatch::None, 2.0).unwrap()
    }

    #[test]
    fn info_and_frozen_partition() {
        let spec = toy_spec();
        let frozen: Vec<usize> = (0..8).filter(|&i| spec.frozen_mask()[i]).collect();
        assert_eq!(frozen, vec![0, 1, 2, 4]);
        assert_eq!(spec.dimension(), 4);
        assert_eq!(spec.payload_len(), 4);
    }

    #[test]
    fn zero_message_encodes_to_zero() {
        let spec = toy_spec();
        let cw = spec.encode(&BitVector::zeros(4)).unwrap();
        assert_eq!(cw, BitVector::zeros(8));
    }

    #[test]
    fn encode_produces_codewords() {
        let spec = toy_spec();
        for pattern in 0..16u8 {
            let msg: BitVector = (0..4).map(|i| (pattern >> i) & 1).collect();
            let cw = spec.encode(&msg).unwrap();
            assert!(spec.is_codeword(&cw));
        }
    }

    #[test]
    fn crc_spec_roundtrip_through_u() {
        let spec = PolarCodeSpec::new(
            4,
            (4..16).collect(),
            Some(CrcSpec::new(4, 0x3).unwrap()),
            LengthMatch::None,
            1.0,
        )
        .unwrap();
        assert_eq!(spec.payload_len(), 8);
        let msg: BitVector = BitVector::from_bits(vec![1, 0, 1, 1, 0, 0, 1, 0]).unwrap();
        let cw = spec.encode(&msg).unwrap();
        let mut u = cw.clone();
        transform_in_place(u.bits_mut());
        assert_eq!(spec.message_from_u(&u), msg);
        assert_eq!(spec.crc_ok_from_u(&u), Some(true));
    }

    #[test]
    fn spec_file_round_trip() {
        let mut spec = PolarCodeSpec::new(
            8,
            (100..228).collect(),
            Some(CrcSpec::crc11()),
            LengthMatch::Punctured(vec![0, 1, 2]),
            1.9375,
        )
        .unwrap();
        spec.set_automorphism_profile(vec![2, 3, 3]);
        let text = spec.to_spec_string();
        let back = PolarCodeSpec::from_spec_string(&text, "test").unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_spec_string(), text);
    }

    #[test]
    fn index_rle_round_trip() {
        let set = vec![0, 1, 2, 5, 7, 8, 9, 30];
        let enc = encode_index_ranges(&set);
        assert_eq!(enc, "0-2,5,7-9,30");
        assert_eq!(decode_index_ranges(&enc).unwrap(), set);
    }

    #[test]
    fn shortened_overlap_with_info_rejected() {
        let r = PolarCodeSpec::new(
            3,
            vec![3, 5, 6, 7],
            None,
            LengthMatch::Shortened(vec![7]),
            0.0,
        );
        assert!(r.is_err());
    }

    #[test]
    fn zero_length_match_is_identity() {
        let spec = toy_spec();
        let cw = spec.encode(&BitVector::from_bits(vec![1, 0, 1, 0]).unwrap()).unwrap();
        assert_eq!(spec.tx_codeword(&cw).unwrap(), cw);
        let llr = LlrVector::from_values((0..8).map(|i| i as f64 - 4.0).collect());
        assert_eq!(spec.rx_expand_llr(&llr).unwrap(), llr);
    }

    #[test]
    fn shortened_positions_receive_saturation() {
        // Shorten the two highest codeword positions; u7/u6 frozen keeps
        // them zero for every message.
        let spec = PolarCodeSpec::new(
            3,
            vec![3, 4, 5],
            None,
            LengthMatch::Shortened(vec![6, 7]),
            0.0,
        )
        .unwrap();
        let msg = BitVector::from_bits(vec![1, 1, 0]).unwrap();
        let cw = spec.encode(&msg).unwrap();
        assert_eq!(cw[6], 0);
        assert_eq!(cw[7], 0);
        let tx = spec.tx_codeword(&cw).unwrap();
        assert_eq!(tx.len(), 6);
        let rx = spec
            .rx_expand_llr(&LlrVector::from_values(vec![1.0; 6]))
            .unwrap();
        assert_eq!(rx[6], LLR_SATURATION);
        assert_eq!(rx[7], LLR_SATURATION);
    }
}
