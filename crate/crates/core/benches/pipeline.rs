use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modlie::corpus::{self, random_algebra};
use modlie::pipeline::{faithful_cr, run_corpus, PipelineConfig};
use modlie::{parallel, LieAlgebra, Parallelism};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Parallelism); 2] = [("parallel", Parallelism::Parallel), ("sequential", Parallelism::Sequential)];

fn corpus_runs(c: &mut Criterion) {
    let entries = corpus::corpus();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(20);
    for (label, par) in MODES {
        let cfg = PipelineConfig { parallelism: par, ..PipelineConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| run_corpus(&entries, &cfg)));
    }
    group.finish();
}

fn random_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algebras: Vec<LieAlgebra> =
        (0..64).map(|i| random_algebra(if i % 2 == 0 { 2 } else { 3 }, 2 + i % 3, &mut rng)).collect();
    let mut group = c.benchmark_group("random-batch");
    group.sample_size(10);
    for (label, par) in MODES {
        // the inner recursion stays sequential so only the batch split differs
        let cfg = PipelineConfig { parallelism: Parallelism::Sequential, ..PipelineConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| parallel::map(par, &algebras, |a| faithful_cr(a, &cfg).map(|(m, _)| m.dim())))
        });
    }
    group.finish();
}

fn single_algebra(c: &mut Criterion) {
    let w15 = corpus::w15();
    let mut group = c.benchmark_group("w15-general");
    group.sample_size(20);
    for (label, par) in MODES {
        let cfg = PipelineConfig { parallelism: par, ..PipelineConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| faithful_cr(&w15, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, corpus_runs, random_batch, single_algebra);
criterion_main!(benches);
