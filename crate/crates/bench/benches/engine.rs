//! Benchmarks for the hot paths: closure computation, extension
//! enumeration, and preservation checking on generated frameworks.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bipolar_aba::verify::generated_signature;
use bipolar_aba::{
    check_preservation, enumerate, random_profile, AggregationSpec, AssumptionSet, Framework,
    GenParams, PropertyId, QuotaKind, SemanticsId,
};

fn dense_framework(n: usize, seed: u64) -> Framework {
    let mut params = GenParams::new(n, 2, seed);
    params.rule_density = 0.3;
    params.support_fraction = 0.5;
    random_profile(&params).expect("generation").agent_framework(0)
}

fn bench_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [8usize, 12, 16] {
        let framework = dense_framework(n, 7);
        let sets: Vec<AssumptionSet> =
            (0..64u32).map(|i| AssumptionSet::from_bits(i.wrapping_mul(0x9E37) % (1 << n))).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &framework, |b, fw| {
            b.iter(|| {
                let mut acc = 0u32;
                for &set in &sets {
                    acc ^= fw.closure(set).bits();
                }
                acc
            })
        });
    }
    group.finish();
}

fn bench_enumerate_preferred(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate-preferred");
    for n in [8usize, 10, 12] {
        let framework = dense_framework(n, 11);
        group.bench_with_input(BenchmarkId::from_parameter(n), &framework, |b, fw| {
            b.iter(|| enumerate(fw, SemanticsId::Preferred).expect("within cap"))
        });
    }
    group.finish();
}

fn bench_check_preservation(c: &mut Criterion) {
    let mut group = c.benchmark_group("check-preservation");
    for n in [6usize, 8, 10] {
        let mut params = GenParams::new(n, 3, 23);
        params.rule_density = 0.25;
        let profile = random_profile(&params).expect("generation");
        let signature = generated_signature(n).expect("signature");
        let property = PropertyId::Extension(SemanticsId::Preferred, signature.all_assumptions());
        let spec = AggregationSpec::Named(QuotaKind::StrictMajority);
        group.bench_with_input(BenchmarkId::from_parameter(n), &profile, |b, p| {
            b.iter(|| check_preservation(p, &spec, &property).expect("checkable"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_closure, bench_enumerate_preferred, bench_check_preservation);
criterion_main!(benches);
