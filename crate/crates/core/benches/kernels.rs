use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mincodes::charsum::{full_spectrum_with, SpectrumMethod};
use mincodes::code::MdCode;
use mincodes::lincode::Guard;
use mincodes::minimality::minimality_cover_oracle;
use mincodes::recipes::{recipe, QuadricChoice};
use mincodes::{Exec, FieldTower, SubsetD};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn quadric(m: u32) -> (FieldTower, SubsetD) {
    let choice = QuadricChoice {
        m,
        ..QuadricChoice::default()
    };
    recipe("example-3.3", choice).unwrap().build().unwrap()
}

fn spectrum(c: &mut Criterion) {
    let (t, d) = quadric(8);
    let mut g = c.benchmark_group("spectrum_3^8");
    g.sample_size(20);
    for (name, exec) in MODES {
        for (mname, method) in [
            ("pointwise", SpectrumMethod::Pointwise),
            ("transform", SpectrumMethod::Transform),
        ] {
            g.bench_with_input(BenchmarkId::new(mname, name), &exec, |b, &e| {
                b.iter(|| full_spectrum_with(&t, &d, method, e))
            });
        }
    }
    g.finish();
}

fn cover_oracle(c: &mut Criterion) {
    let (t, d) = recipe("example-3.1", QuadricChoice::default())
        .unwrap()
        .build()
        .unwrap();
    let code = MdCode::new(&t, d);
    let mut g = c.benchmark_group("cover_oracle_4^4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| minimality_cover_oracle(&code, e, Guard::default()))
        });
    }
    g.finish();
}

fn weights(c: &mut Criterion) {
    let (t, d) = quadric(6);
    let code = MdCode::new(&t, d);
    let mut g = c.benchmark_group("weights_direct_3^6");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| code.weight_distribution_direct(e, u64::MAX).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, spectrum, cover_oracle, weights);
criterion_main!(benches);
