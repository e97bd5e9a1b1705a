use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use twistor_core::lambda2::sample_rotation_indexed;
use twistor_core::zoo::random_curvature;
use twistor_core::{build, decompose_blocks, frame_scan, rotate_curvature, Check, GrayHervellaClass, ScanConfig};

fn pointwise(c: &mut Criterion) {
    let curv = random_curvature(1).curvature;
    let rot = sample_rotation_indexed(0, 0);
    c.bench_function("decompose_blocks", |b| b.iter(|| decompose_blocks(black_box(&curv))));
    c.bench_function("rotate_curvature", |b| {
        b.iter(|| rotate_curvature(black_box(&curv), black_box(&rot)))
    });
    c.bench_function("twistor_build", |b| b.iter(|| build(black_box(&curv), 1.3).unwrap()));
    c.bench_function("haar_sample", |b| b.iter(|| sample_rotation_indexed(7, black_box(123))));
}

fn scans(c: &mut Criterion) {
    let curv = random_curvature(2).curvature;
    let cfg = ScanConfig {
        n: 200,
        ..ScanConfig::default()
    };
    let mut g = c.benchmark_group("frame_scan_200");
    g.sample_size(20);
    for check in [
        Check::QuadraticEinstein,
        Check::Nijenhuis,
        Check::Class(GrayHervellaClass::QK),
    ] {
        g.bench_function(check.name(), |b| {
            b.iter(|| frame_scan(black_box(&curv), &check, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, pointwise, scans);
criterion_main!(benches);
