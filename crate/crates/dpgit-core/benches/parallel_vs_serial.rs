use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dpgit::catalog::verify_all;
use dpgit::gitstab::{torus_stability, TorusPoint};
use dpgit::par::{self, Exec};
use dpgit::polyalg::FieldElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn modes() -> Vec<(&'static str, Exec)> {
    let mut m = vec![("serial", Exec::Serial)];
    if cfg!(feature = "parallel") {
        m.push(("parallel", Exec::Parallel));
    }
    m
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog_verify_all");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_all(exec)));
    }
    g.finish();
}

fn torus_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points: Vec<TorusPoint> = (0..400)
        .map(|_| {
            let r = rng.gen_range(1..=3);
            let m = rng.gen_range(2..=8);
            let w: Vec<Vec<i64>> = (0..m).map(|_| (0..r).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            TorusPoint::new(vec![FieldElement::one(); m], w).unwrap()
        })
        .collect();
    let mut g = c.benchmark_group("torus_stability_batch");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::map(exec, &points, |p| torus_stability(p).unwrap().class))
        });
    }
    g.finish();
}

criterion_group!(benches, catalog, torus_batch);
criterion_main!(benches);
