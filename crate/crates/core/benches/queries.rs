use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lcex::corpus;
use lcex::{build_index, naive_lce, AncestorKind, BuildOptions, IsaOracle, SentinelPolicy, Text};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pairs(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..k)
        .map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n)))
        .collect()
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch");
    for (name, raw) in [
        ("fibonacci", corpus::fibonacci(200_000)),
        ("random4", corpus::random(200_000, 4, 1)),
    ] {
        let text = Text::load(&raw, SentinelPolicy::Auto).unwrap();
        let ix = build_index(&text, 64, BuildOptions { ancestor: AncestorKind::Ladder, ..Default::default() }).unwrap();
        let oracle = IsaOracle::build(&text);
        let q = pairs(text.len(), 100_000);
        group.throughput(Throughput::Elements(q.len() as u64));
        group.bench_with_input(BenchmarkId::new("index-parallel", name), &q, |b, q| {
            b.iter(|| ix.lce_batch(q).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("index-sequential", name), &q, |b, q| {
            b.iter(|| ix.lce_batch_seq(q).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", name), &q, |b, q| {
            b.iter(|| q.iter().map(|&(i, j)| oracle.lce(i, j).unwrap()).sum::<usize>())
        });
        let short = &q[..2_000];
        group.throughput(Throughput::Elements(short.len() as u64));
        group.bench_with_input(BenchmarkId::new("naive", name), short, |b, q| {
            b.iter(|| q.iter().map(|&(i, j)| naive_lce(&text, i, j).unwrap()).sum::<usize>())
        });
    }
    group.finish();
}

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    let text = Text::load(&corpus::fibonacci(200_000), SentinelPolicy::Auto).unwrap();
    for t in [16, 64, 256] {
        group.bench_with_input(BenchmarkId::new("fibonacci", t), &t, |b, &t| {
            b.iter(|| build_index(&text, t, BuildOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, build);
criterion_main!(benches);
