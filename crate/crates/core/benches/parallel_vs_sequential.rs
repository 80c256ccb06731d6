use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use weyl_toric::char_row::{row_orbits, stabilizer_generators, CharacteristicMatrix};
use weyl_toric::coxeter::{induced_streaming, CoxeterComplex, VertexTable, DEFAULT_MEMORY_BUDGET};
use weyl_toric::homology::{reduced_betti, HomologyConfig};
use weyl_toric::reduction::{reduce, ReductionConfig, Symmetry};
use weyl_toric::weyl::WeylGroup;
use weyl_toric::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn coxeter_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("coxeter_build");
    group.sample_size(10);
    for spec in ["F4", "E6"] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, spec), &exec, |b, &exec| {
                b.iter(|| CoxeterComplex::build(black_box(spec.parse().unwrap()), DEFAULT_MEMORY_BUDGET, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn induced_build(c: &mut Criterion) {
    let g = WeylGroup::new("E6".parse().unwrap()).unwrap();
    let t = VertexTable::new(g.cartan()).unwrap();
    let u = row_orbits(&g).last().unwrap().representative;
    let mut group = c.benchmark_group("induced_streaming_E6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| induced_streaming(g.cartan(), &t, black_box(u.bits()), DEFAULT_MEMORY_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

fn reduction_and_homology(c: &mut Criterion) {
    let g = WeylGroup::new("E7".parse().unwrap()).unwrap();
    let t = VertexTable::new(g.cartan()).unwrap();
    let m = CharacteristicMatrix::new(&t);
    // the orbit whose subcomplex is left unchanged by reduction
    let u = row_orbits(&g)
        .into_iter()
        .map(|o| o.representative)
        .find(|&u| m.subset_size(u) == 4664)
        .unwrap();
    let k = induced_streaming(g.cartan(), &t, u.bits(), DEFAULT_MEMORY_BUDGET, Execution::Parallel).unwrap();
    let sym = Symmetry::new(&g, &t, &stabilizer_generators(&g, u));

    let mut group = c.benchmark_group("E7_reduce");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = ReductionConfig {
            exec,
            ..ReductionConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| reduce(black_box(&k), &t, Some(&sym), &cfg).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("E7_homology");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = HomologyConfig {
            exec,
            ..HomologyConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| reduced_betti(black_box(&k), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, coxeter_build, induced_build, reduction_and_homology);
criterion_main!(benches);
