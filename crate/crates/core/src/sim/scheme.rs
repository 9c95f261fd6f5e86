//! Scheme descriptors: which code, which decoder, which parameters,
//! and per-worker frame runners built from them.

use crate::bits::BitVector;
use crate::channel::transmit_bpsk_awgn_with;
use crate::error::{Error, Result};
use crate::ldpc::decode::{BpConfig, BpDecoder, BpSchedule, BpVariant, LlrQuantizer};
use crate::ldpc::dvbs2::{dvbs2_code, Dvbs2Rate};
use crate::ldpc::encode::LdpcCode;
use crate::ldpc::nr::NrLdpcCode;
use crate::llr::LlrVector;
use crate::outer::bch::{BchOutcome, BchSpec};
use crate::polar::aed::{sample_automorphisms, with_automorphism_profile, AedDecoder, AutomorphismPermutation};
use crate::polar::code::PolarCodeSpec;
use crate::polar::construct::design_monomial_info_set;
use crate::polar::decode::Kernel;
use crate::polar::sc::ScDecoder;
use crate::polar::scl::SclDecoder;
use crate::polar::ssc::SscDecoder;
use crate::outer::crc::CrcSpec;
use crate::rng::{Rng, SeedSpec};
use crate::scldpc::{build_coupled_chain, ChainConfig, CoupledChain, Protograph, WindowConfig, WindowDecoder};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Check-node kernel selection in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelChoice {
    #[default]
    MinSum,
    Exact,
}

impl From<KernelChoice> for Kernel {
    fn from(k: KernelChoice) -> Kernel {
        match k {
            KernelChoice::MinSum => Kernel::MinSum,
            KernelChoice::Exact => Kernel::Exact,
        }
    }
}

/// Reference to a polar code: a spec file or a builtin constructor.
///
/// Builtins: `de:N:K[:design_snr_db]` (density-evolution design, default
/// design at GA target FER 1e-6), `crc11:N:K` (K non-frozen channels of
/// which 11 are the CRC), `aed:N:K` (closure of {31, 57} with the
/// automorphism profile attached).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarCodeRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
}

impl PolarCodeRef {
    pub fn builtin(name: &str) -> Self {
        PolarCodeRef {
            spec_file: None,
            builtin: Some(name.to_string()),
        }
    }

    pub fn resolve(&self) -> Result<PolarCodeSpec> {
        match (&self.spec_file, &self.builtin) {
            (Some(path), None) => PolarCodeSpec::read_spec_file(Path::new(path)),
            (None, Some(name)) => build_polar_builtin(name),
            _ => Err(Error::config(
                "polar code reference needs exactly one of spec_file / builtin",
            )),
        }
    }
}

/// Builtin constructions are deterministic, so repeated lookups (one per
/// worker) reuse a process-wide cache; the density-evolution design
/// search is the expensive part at long block lengths.
pub fn build_polar_builtin(name: &str) -> Result<PolarCodeSpec> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<String, PolarCodeSpec>>> = Mutex::new(None);
    if let Some(spec) = CACHE
        .lock()
        .expect("cache lock")
        .get_or_insert_with(HashMap::new)
        .get(name)
    {
        return Ok(spec.clone());
    }
    let spec = build_polar_builtin_uncached(name)?;
    CACHE
        .lock()
        .expect("cache lock")
        .get_or_insert_with(HashMap::new)
        .insert(name.to_string(), spec.clone());
    Ok(spec)
}

fn build_polar_builtin_uncached(name: &str) -> Result<PolarCodeSpec> {
    let parts: Vec<&str> = name.split(':').collect();
    let parse = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::config(format!("bad integer '{s}' in builtin '{name}'")))
    };
    let log2_of = |n: usize| -> Result<u32> {
        if !n.is_power_of_two() {
            return Err(Error::config(format!("{n} is not a power of two")));
        }
        Ok(n.trailing_zeros())
    };
    match parts.as_slice() {
        ["de", n, k] | ["de", n, k, _] => {
            let (n, k) = (parse(n)?, parse(k)?);
            let n_log2 = log2_of(n)?;
            let design = if let ["de", _, _, snr] = parts.as_slice() {
                snr.parse::<f64>()
                    .map_err(|_| Error::config(format!("bad design snr in '{name}'")))?
            } else {
                crate::polar::construct::design_snr_for_target_fer(n_log2, k, 1e-6)?
            };
            PolarCodeSpec::from_density_evolution(n_log2, k, design, None)
        }
        ["crc11", n, k] => {
            let (n, k) = (parse(n)?, parse(k)?);
            let n_log2 = log2_of(n)?;
            let design = crate::polar::construct::design_snr_for_target_fer(n_log2, k, 1e-6)?;
            PolarCodeSpec::from_density_evolution(n_log2, k, design, Some(CrcSpec::crc11()))
        }
        ["aed", n, k] => {
            let (n, k) = (parse(n)?, parse(k)?);
            let n_log2 = log2_of(n)?;
            let info = design_monomial_info_set(n_log2, &[31, 57], k, 1.0)?;
            let spec = PolarCodeSpec::new(
                n_log2,
                info,
                None,
                crate::polar::code::LengthMatch::None,
                2.0,
            )?;
            with_automorphism_profile(spec)
        }
        _ => Err(Error::config(format!("unknown polar builtin '{name}'"))),
    }
}

/// Reference to an LDPC code. Builtins: `dvbs2:1/2`, `dvbs2:8/9`,
/// `nr:PAYLOAD:TX`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LdpcCodeRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alist: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
}

impl LdpcCodeRef {
    pub fn builtin(name: &str) -> Self {
        LdpcCodeRef {
            alist: None,
            builtin: Some(name.to_string()),
        }
    }
}

/// Belief-propagation parameters as they appear in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpParams {
    /// "spa", "nms", or "oms".
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// "layered" or "flooding".
    pub schedule: String,
    pub iterations: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quant_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quant_step: Option<f64>,
    #[serde(default = "default_true")]
    pub early_stop: bool,
}

fn default_true() -> bool {
    true
}

impl BpParams {
    pub fn spa_layered(iterations: u32) -> Self {
        BpParams {
            variant: "spa".into(),
            alpha: None,
            beta: None,
            schedule: "layered".into(),
            iterations,
            quant_bits: None,
            quant_step: None,
            early_stop: true,
        }
    }

    pub fn to_config(&self) -> Result<BpConfig> {
        let variant = match self.variant.as_str() {
            "spa" => BpVariant::Spa,
            "nms" => BpVariant::NormalizedMinSum(
                self.alpha
                    .ok_or_else(|| Error::config("nms requires alpha"))?,
            ),
            "oms" => BpVariant::OffsetMinSum(
                self.beta.ok_or_else(|| Error::config("oms requires beta"))?,
            ),
            other => return Err(Error::config(format!("unknown BP variant '{other}'"))),
        };
        let schedule = match self.schedule.as_str() {
            "layered" => BpSchedule::Layered,
            "flooding" => BpSchedule::Flooding,
            other => return Err(Error::config(format!("unknown schedule '{other}'"))),
        };
        let quantization = match (self.quant_bits, self.quant_step) {
            (Some(bits), Some(step)) => Some(LlrQuantizer::new(bits, step)?),
            (None, None) => None,
            _ => {
                return Err(Error::config(
                    "quantization needs both quant_bits and quant_step",
                ))
            }
        };
        let cfg = BpConfig {
            variant,
            schedule,
            max_iterations: self.iterations,
            quantization,
            early_stop: self.early_stop,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Spatially-coupled chain parameters (inline or from a chain spec file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling_width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lifting: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ChainParams {
    pub fn resolve(&self) -> Result<ChainConfig> {
        if let Some(path) = &self.chain_file {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.clone(), e))?;
            return ChainConfig::from_text(&text, path);
        }
        Ok(ChainConfig {
            base: Protograph::regular_4_8(),
            coupling_width: self
                .coupling_width
                .ok_or_else(|| Error::config("chain needs coupling_width"))?,
            chain_len: self
                .chain_len
                .ok_or_else(|| Error::config("chain needs chain_len"))?,
            lifting: self
                .lifting
                .ok_or_else(|| Error::config("chain needs lifting"))?,
            seed: SeedSpec::new(self.seed.unwrap_or(1), 0),
        })
    }
}

/// The full scheme descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SchemeConfig {
    PolarSc {
        code: PolarCodeRef,
        #[serde(default)]
        kernel: KernelChoice,
    },
    PolarSsc {
        code: PolarCodeRef,
    },
    PolarScl {
        code: PolarCodeRef,
        list_size: usize,
        #[serde(default)]
        kernel: KernelChoice,
    },
    PolarAed {
        code: PolarCodeRef,
        ensemble: usize,
        #[serde(default)]
        kernel: KernelChoice,
    },
    LdpcBp {
        code: LdpcCodeRef,
        decoder: BpParams,
    },
    /// DVB-S2 LDPC with the standard outer BCH (t = 12).
    LdpcBchBp {
        rate: String,
        decoder: BpParams,
    },
    ScLdpcWbp {
        chain: ChainParams,
        window_size: usize,
        #[serde(default = "default_one")]
        iterations_per_step: u32,
    },
}

fn default_one() -> u32 {
    1
}

impl SchemeConfig {
    /// Short label used in result files and figure legends.
    pub fn label(&self) -> String {
        match self {
            SchemeConfig::PolarSc { .. } => "polar-sc".into(),
            SchemeConfig::PolarSsc { .. } => "polar-ssc".into(),
            SchemeConfig::PolarScl { list_size, .. } => format!("polar-scl{list_size}"),
            SchemeConfig::PolarAed { ensemble, .. } => format!("polar-aed{ensemble}"),
            SchemeConfig::LdpcBp { decoder, .. } => {
                format!("ldpc-{}{}", short_schedule(&decoder.schedule), decoder.iterations)
            }
            SchemeConfig::LdpcBchBp { decoder, .. } => {
                format!("ldpc-bch-{}{}", short_schedule(&decoder.schedule), decoder.iterations)
            }
            SchemeConfig::ScLdpcWbp { window_size, .. } => format!("sc-ldpc-wbp{window_size}"),
        }
    }
}

fn short_schedule(s: &str) -> &'static str {
    match s {
        "layered" => "lbp-",
        _ => "bp-",
    }
}

/// Outcome of a single simulated frame.
pub struct FrameResult {
    pub bit_errors: u64,
    pub iterations: Option<u32>,
}

/// A per-worker instantiation of the scheme: owns decoders and scratch,
/// runs complete frames.
pub trait SchemeWorker: Send {
    /// Information bits carried per frame (sets the payload rate).
    fn payload_bits(&self) -> usize;
    /// Bits the error counter runs over per frame (BER denominator).
    /// Payload bits for the polar and concatenated schemes, coded bits
    /// for the iterative inner decoders.
    fn counted_bits(&self) -> usize {
        self.payload_bits()
    }
    /// Channel uses per frame (transmitted BPSK symbols).
    fn tx_bits(&self) -> usize;
    /// True when the all-zero-codeword shortcut is statistically exact
    /// for this scheme (linear code, symmetric decoder, no
    /// message-content-dependent path).
    fn symmetric(&self) -> bool;
    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult>;
}

/// Builds one worker instance. Called once per thread so nothing is
/// shared mutably.
pub fn build_worker(scheme: &SchemeConfig, aux_seed: SeedSpec) -> Result<Box<dyn SchemeWorker>> {
    match scheme {
        SchemeConfig::PolarSc { code, kernel } => {
            let spec = code.resolve()?;
            Ok(Box::new(PolarScWorker::new(spec, (*kernel).into(), false)))
        }
        SchemeConfig::PolarSsc { code } => {
            let spec = code.resolve()?;
            Ok(Box::new(PolarScWorker::new(spec, Kernel::MinSum, true)))
        }
        SchemeConfig::PolarScl {
            code,
            list_size,
            kernel,
        } => {
            let spec = code.resolve()?;
            let dec = SclDecoder::new(&spec, *list_size, (*kernel).into())?;
            Ok(Box::new(PolarSclWorker { spec, dec }))
        }
        SchemeConfig::PolarAed {
            code,
            ensemble,
            kernel,
        } => {
            let spec = code.resolve()?;
            let perms = sample_automorphisms(&spec, *ensemble, aux_seed)?;
            let dec = AedDecoder::new(&spec, (*kernel).into());
            Ok(Box::new(PolarAedWorker { spec, dec, perms }))
        }
        SchemeConfig::LdpcBp { code, decoder } => {
            let cfg = decoder.to_config()?;
            match (&code.alist, &code.builtin) {
                (Some(path), None) => {
                    let h = crate::ldpc::alist::load_alist(Path::new(path))?;
                    let code = LdpcCode::new(h)?;
                    let dec = BpDecoder::new(&code.h, cfg)?;
                    Ok(Box::new(GenericLdpcWorker { code, dec }))
                }
                (None, Some(name)) => build_ldpc_builtin_worker(name, cfg),
                _ => Err(Error::config(
                    "ldpc code reference needs exactly one of alist / builtin",
                )),
            }
        }
        SchemeConfig::LdpcBchBp { rate, decoder } => {
            let rate = parse_dvbs2_rate(rate)?;
            let ldpc = dvbs2_code(rate)?;
            let bch = BchSpec::dvbs2_normal(ldpc.dimension())?;
            let dec = BpDecoder::new(&ldpc.h, decoder.to_config()?)?;
            Ok(Box::new(Dvbs2BchWorker { ldpc, bch, dec }))
        }
        SchemeConfig::ScLdpcWbp {
            chain,
            window_size,
            iterations_per_step,
        } => {
            let chain = build_coupled_chain(&chain.resolve()?)?;
            let dec = WindowDecoder::new(&chain);
            Ok(Box::new(ScLdpcWorker {
                wcfg: WindowConfig::new(*window_size, *iterations_per_step),
                dec,
                chain,
            }))
        }
    }
}

pub fn parse_dvbs2_rate(s: &str) -> Result<Dvbs2Rate> {
    match s {
        "1/2" => Ok(Dvbs2Rate::R1_2),
        "8/9" => Ok(Dvbs2Rate::R8_9),
        other => Err(Error::config(format!("unknown DVB-S2 rate '{other}'"))),
    }
}

fn build_ldpc_builtin_worker(name: &str, cfg: BpConfig) -> Result<Box<dyn SchemeWorker>> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["dvbs2", rate] => {
            let code = dvbs2_code(parse_dvbs2_rate(rate)?)?;
            let dec = BpDecoder::new(&code.h, cfg)?;
            Ok(Box::new(GenericLdpcWorker { code, dec }))
        }
        ["nr", payload, tx] => {
            let payload = payload
                .parse()
                .map_err(|_| Error::config(format!("bad payload in '{name}'")))?;
            let tx = tx
                .parse()
                .map_err(|_| Error::config(format!("bad tx length in '{name}'")))?;
            let code = NrLdpcCode::new(payload, tx)?;
            let dec = BpDecoder::new(&code.h, cfg)?;
            Ok(Box::new(NrLdpcWorker { code, dec }))
        }
        _ => Err(Error::config(format!("unknown ldpc builtin '{name}'"))),
    }
}

// ---------------------------------------------------------------------------
// Worker implementations
// ---------------------------------------------------------------------------

struct PolarScWorker {
    spec: PolarCodeSpec,
    sc: Option<ScDecoder>,
    ssc: Option<SscDecoder>,
}

impl PolarScWorker {
    fn new(spec: PolarCodeSpec, kernel: Kernel, simplified: bool) -> Self {
        let (sc, ssc) = if simplified {
            (None, Some(SscDecoder::new(&spec)))
        } else {
            (Some(ScDecoder::new(&spec, kernel)), None)
        };
        PolarScWorker { spec, sc, ssc }
    }
}

fn polar_frame(
    spec: &PolarCodeSpec,
    sigma: f64,
    all_zero: bool,
    rng: &mut Rng,
    decode: impl FnOnce(&LlrVector) -> Result<crate::polar::decode::DecodeOutcome>,
) -> Result<FrameResult> {
    let payload = spec.payload_len();
    let (msg, tx) = if all_zero {
        (BitVector::zeros(payload), BitVector::zeros(spec.tx_len()))
    } else {
        let msg: BitVector = (0..payload).map(|_| rng.next_u64() as u8 & 1).collect();
        let mother = spec.encode(&msg)?;
        let tx = spec.tx_codeword(&mother)?;
        (msg, tx)
    };
    let rx = transmit_bpsk_awgn_with(&tx, sigma, rng);
    let llr = spec.rx_expand_llr(&rx)?;
    let out = decode(&llr)?;
    let (_, errs) = crate::bits::count_bit_errors(&out.message, &msg)?;
    Ok(FrameResult {
        bit_errors: errs as u64,
        iterations: None,
    })
}

impl SchemeWorker for PolarScWorker {
    fn payload_bits(&self) -> usize {
        self.spec.payload_len()
    }

    fn tx_bits(&self) -> usize {
        self.spec.tx_len()
    }

    fn symmetric(&self) -> bool {
        self.spec.crc().is_none()
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let spec = &self.spec;
        match (&mut self.sc, &mut self.ssc) {
            (Some(sc), None) => polar_frame(spec, sigma, all_zero, rng, |llr| sc.decode(spec, llr)),
            (None, Some(ssc)) => {
                polar_frame(spec, sigma, all_zero, rng, |llr| ssc.decode(spec, llr))
            }
            _ => unreachable!(),
        }
    }
}

struct PolarSclWorker {
    spec: PolarCodeSpec,
    dec: SclDecoder,
}

impl SchemeWorker for PolarSclWorker {
    fn payload_bits(&self) -> usize {
        self.spec.payload_len()
    }

    fn tx_bits(&self) -> usize {
        self.spec.tx_len()
    }

    fn symmetric(&self) -> bool {
        // CRC-aided selection depends on message content.
        self.spec.crc().is_none()
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let spec = &self.spec;
        let dec = &self.dec;
        polar_frame(spec, sigma, all_zero, rng, |llr| dec.decode(spec, llr))
    }
}

struct PolarAedWorker {
    spec: PolarCodeSpec,
    dec: AedDecoder,
    perms: Vec<AutomorphismPermutation>,
}

impl SchemeWorker for PolarAedWorker {
    fn payload_bits(&self) -> usize {
        self.spec.payload_len()
    }

    fn tx_bits(&self) -> usize {
        self.spec.tx_len()
    }

    fn symmetric(&self) -> bool {
        self.spec.crc().is_none()
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let spec = &self.spec;
        let perms = &self.perms;
        let dec = &mut self.dec;
        polar_frame(spec, sigma, all_zero, rng, |llr| dec.decode(spec, llr, perms))
    }
}

struct GenericLdpcWorker {
    code: LdpcCode,
    dec: BpDecoder,
}

impl SchemeWorker for GenericLdpcWorker {
    fn payload_bits(&self) -> usize {
        self.code.dimension()
    }

    fn counted_bits(&self) -> usize {
        self.code.block_len()
    }

    fn tx_bits(&self) -> usize {
        self.code.block_len()
    }

    fn symmetric(&self) -> bool {
        true
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let tx = if all_zero {
            BitVector::zeros(self.code.block_len())
        } else {
            let msg: BitVector = (0..self.code.dimension())
                .map(|_| rng.next_u64() as u8 & 1)
                .collect();
            self.code.encode(&msg)?
        };
        let rx = transmit_bpsk_awgn_with(&tx, sigma, rng);
        let out = self.dec.decode(&rx)?;
        // Frame errors count every residual coded-bit difference: the
        // iterative decoder's leftovers pool in the low-degree parity
        // tail, so a message-only count would hide most failures.
        let (_, errs) = crate::bits::count_bit_errors(&out.bits, &tx)?;
        Ok(FrameResult {
            bit_errors: errs as u64,
            iterations: Some(out.iterations),
        })
    }
}

struct NrLdpcWorker {
    code: NrLdpcCode,
    dec: BpDecoder,
}

impl SchemeWorker for NrLdpcWorker {
    fn payload_bits(&self) -> usize {
        self.code.payload_len()
    }

    fn counted_bits(&self) -> usize {
        self.code.decode_len()
    }

    fn tx_bits(&self) -> usize {
        self.code.tx_len()
    }

    fn symmetric(&self) -> bool {
        true
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let (msg, tx) = if all_zero {
            (
                BitVector::zeros(self.code.payload_len()),
                BitVector::zeros(self.code.tx_len()),
            )
        } else {
            let msg: BitVector = (0..self.code.payload_len())
                .map(|_| rng.next_u64() as u8 & 1)
                .collect();
            let tx = self.code.encode(&msg)?;
            (msg, tx)
        };
        let rx = transmit_bpsk_awgn_with(&tx, sigma, rng);
        let llr = self.code.expand_llr(&rx)?;
        let out = self.dec.decode(&llr)?;
        let full = if all_zero {
            BitVector::zeros(self.code.decode_len())
        } else {
            self.code.encode_full(&msg)?
        };
        let (_, errs) = crate::bits::count_bit_errors(&out.bits, &full)?;
        Ok(FrameResult {
            bit_errors: errs as u64,
            iterations: Some(out.iterations),
        })
    }
}

struct Dvbs2BchWorker {
    ldpc: LdpcCode,
    bch: BchSpec,
    dec: BpDecoder,
}

impl SchemeWorker for Dvbs2BchWorker {
    fn payload_bits(&self) -> usize {
        self.bch.message_len()
    }

    fn tx_bits(&self) -> usize {
        self.ldpc.block_len()
    }

    fn symmetric(&self) -> bool {
        // Both codes are linear and both decoders are
        // translation-equivariant (syndrome based).
        true
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        let (msg, tx) = if all_zero {
            (
                BitVector::zeros(self.bch.message_len()),
                BitVector::zeros(self.ldpc.block_len()),
            )
        } else {
            let msg: BitVector = (0..self.bch.message_len())
                .map(|_| rng.next_u64() as u8 & 1)
                .collect();
            let inner = self.bch.encode(&msg)?;
            let tx = self.ldpc.encode(&inner)?;
            (msg, tx)
        };
        let rx = transmit_bpsk_awgn_with(&tx, sigma, rng);
        let out = self.dec.decode(&rx)?;
        let inner_hat = self.ldpc.extract_message(&out.bits);
        let corrected = match self.bch.decode(&inner_hat)? {
            BchOutcome::Corrected { word, .. } => word,
            BchOutcome::Failed => inner_hat,
        };
        let decoded: BitVector = corrected.bits()[..self.bch.message_len()]
            .iter()
            .copied()
            .collect();
        let (_, errs) = crate::bits::count_bit_errors(&decoded, &msg)?;
        Ok(FrameResult {
            bit_errors: errs as u64,
            iterations: Some(out.iterations),
        })
    }
}

struct ScLdpcWorker {
    chain: CoupledChain,
    dec: WindowDecoder,
    wcfg: WindowConfig,
}

impl SchemeWorker for ScLdpcWorker {
    fn payload_bits(&self) -> usize {
        self.chain.block_len() - self.chain.h.num_rows()
    }

    fn counted_bits(&self) -> usize {
        self.chain.block_len()
    }

    fn tx_bits(&self) -> usize {
        self.chain.block_len()
    }

    fn symmetric(&self) -> bool {
        true
    }

    fn run_frame(&mut self, sigma: f64, all_zero: bool, rng: &mut Rng) -> Result<FrameResult> {
        if !all_zero {
            return Err(Error::config(
                "the coupled-chain scheme has no per-frame encoder; enable the all-zero shortcut",
            ));
        }
        let tx = BitVector::zeros(self.chain.block_len());
        let rx = transmit_bpsk_awgn_with(&tx, sigma, rng);
        let out = self.dec.decode(&self.chain, &rx, &self.wcfg)?;
        // Bit errors counted over all coded bits of the chain.
        Ok(FrameResult {
            bit_errors: out.bits.weight() as u64,
            iterations: Some(out.iterations),
        })
    }
}
