use criterion::{criterion_group, criterion_main, Criterion};
use idsing::family::{analyze_family, AnalysisMode, FamilyOptions};
use idsing::germ::verify_ids;
use idsing::invariants::{top_polar_multiplicity, vanishing_euler, GenericityContext};
use idsing_bench::{briancon_speder_member, coordinate_change, space_curve, surface};

fn germs(c: &mut Criterion) {
    let ctx = GenericityContext::default();
    c.bench_function("vanishing_euler_surface", |b| {
        b.iter(|| vanishing_euler(&surface(), &ctx).unwrap().nu)
    });
    c.bench_function("vanishing_euler_space_curve", |b| {
        b.iter(|| vanishing_euler(&space_curve(), &ctx).unwrap().nu)
    });
    c.bench_function("verify_ids_surface", |b| {
        b.iter(|| verify_ids(&surface()).unwrap())
    });

    let mut slow = c.benchmark_group("briancon_speder");
    slow.sample_size(10);
    slow.bench_function("top_polar_t1", |b| {
        b.iter(|| top_polar_multiplicity(&briancon_speder_member(), &ctx).unwrap().0)
    });
    slow.finish();
}

fn families(c: &mut Criterion) {
    let mut g = c.benchmark_group("family");
    g.sample_size(10);
    for mode in [AnalysisMode::Sampled, AnalysisMode::Generic] {
        let opts = FamilyOptions {
            mode,
            ..FamilyOptions::default()
        };
        g.bench_function(format!("coordinate_change_{}", mode.name()), |b| {
            b.iter(|| {
                analyze_family(&coordinate_change(), &opts)
                    .unwrap()
                    .whitney_verdict
            })
        });
    }
    g.finish();
}

criterion_group!(benches, germs, families);
criterion_main!(benches);
