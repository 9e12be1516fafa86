use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nonspin_core::golden::GoldenScalar;
use nonspin_core::pleated::{glt_weight_exact, glt_weight_monte_carlo, EdgePath, WeightConfig};
use nonspin_core::polytopes::{build_600cell, build_link_sphere};
use nonspin_core::scenarios::{assemble, build_disc, Context, ScenarioData, Suite};

fn arithmetic(c: &mut Criterion) {
    let x = GoldenScalar::from_fracs(3, 7, -2, 5);
    let y = GoldenScalar::phi();
    c.bench_function("golden mul+div", |b| b.iter(|| black_box(&(&x * &y) / &y)));
}

fn polytopes(c: &mut Criterion) {
    let mut g = c.benchmark_group("polytopes");
    g.sample_size(10);
    g.bench_function("600-cell", |b| b.iter(|| build_600cell().unwrap()));
    g.bench_function("link sphere", |b| b.iter(build_link_sphere));
    g.finish();
}

fn weights(c: &mut Criterion) {
    let y = EdgePath::parse("-e4 -e1 +e4 -e2 -e3 +e2").unwrap();
    c.bench_function("weight exact", |b| b.iter(|| glt_weight_exact(black_box(&y))));
    let cfg = WeightConfig { samples: 10_000, seed: 1 };
    c.bench_function("weight 10k samples", |b| b.iter(|| glt_weight_monte_carlo(black_box(&y), &cfg)));
}

fn constructions(c: &mut Criterion) {
    let ctx = Context::shared();
    let data = ScenarioData::bundled();
    let mut g = c.benchmark_group("constructions");
    g.sample_size(10);
    g.bench_function("assemble S", |b| b.iter(|| assemble(ctx, &data).unwrap()));
    let a = assemble(ctx, &data).unwrap();
    g.bench_function("cut disc", |b| b.iter(|| build_disc(ctx, &data, &a.surface).unwrap()));
    g.bench_function("polytope suite", |b| b.iter(|| Suite::Polytopes.run(ctx, &data, &WeightConfig::default())));
    g.finish();
}

criterion_group!(benches, arithmetic, polytopes, weights, constructions);
criterion_main!(benches);
