//! Throughput benchmarks for the decoder hot paths.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use unicodec_core::bits::BitVector;
use unicodec_core::channel::transmit_bpsk_awgn_with;
use unicodec_core::ldpc::decode::{BpConfig, BpDecoder, BpSchedule, BpVariant};
use unicodec_core::ldpc::nr::NrLdpcCode;
use unicodec_core::llr::LlrVector;
use unicodec_core::polar::code::PolarCodeSpec;
use unicodec_core::polar::decode::Kernel;
use unicodec_core::polar::sc::ScDecoder;
use unicodec_core::polar::scl::SclDecoder;
use unicodec_core::polar::ssc::SscDecoder;
use unicodec_core::rng::{Rng, SeedSpec};

fn noisy_frame(n: usize, sigma: f64, seed: u64) -> LlrVector {
    let mut rng = Rng::from_seed(SeedSpec::new(seed, 0));
    transmit_bpsk_awgn_with(&BitVector::zeros(n), sigma, &mut rng)
}

fn polar_decoders(c: &mut Criterion) {
    let mut group = c.benchmark_group("polar");
    for n_log2 in [8u32, 12] {
        let n = 1usize << n_log2;
        let spec = PolarCodeSpec::from_density_evolution(n_log2, n / 2, 3.0, None).unwrap();
        let llr = noisy_frame(n, 0.8, 17);
        group.throughput(Throughput::Elements(n as u64));
        let mut sc = ScDecoder::new(&spec, Kernel::MinSum);
        group.bench_with_input(BenchmarkId::new("sc", n), &llr, |b, llr| {
            b.iter(|| sc.decode(&spec, llr).unwrap())
        });
        let mut ssc = SscDecoder::new(&spec);
        group.bench_with_input(BenchmarkId::new("ssc", n), &llr, |b, llr| {
            b.iter(|| ssc.decode(&spec, llr).unwrap())
        });
    }
    let spec = PolarCodeSpec::from_density_evolution(8, 128, 3.0, None).unwrap();
    let llr = noisy_frame(256, 0.8, 18);
    let scl = SclDecoder::new(&spec, 8, Kernel::MinSum).unwrap();
    group.throughput(Throughput::Elements(256));
    group.bench_with_input(BenchmarkId::new("scl8", 256), &llr, |b, llr| {
        b.iter(|| scl.decode(&spec, llr).unwrap())
    });
    group.finish();
}

fn ldpc_decoders(c: &mut Criterion) {
    let mut group = c.benchmark_group("ldpc");
    let code = NrLdpcCode::new(128, 256).unwrap();
    let rx = noisy_frame(256, 0.75, 19);
    let llr = code.expand_llr(&rx).unwrap();
    for (label, variant) in [
        ("spa", BpVariant::Spa),
        ("nms", BpVariant::NormalizedMinSum(0.8)),
    ] {
        let cfg = BpConfig {
            variant,
            schedule: BpSchedule::Layered,
            max_iterations: 8,
            quantization: None,
            early_stop: false,
        };
        let mut dec = BpDecoder::new(&code.h, cfg).unwrap();
        group.throughput(Throughput::Elements(256));
        group.bench_with_input(BenchmarkId::new(label, "nr-256"), &llr, |b, llr| {
            b.iter(|| dec.decode(llr).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, polar_decoders, ldpc_decoders);
criterion_main!(benches);
