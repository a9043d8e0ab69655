use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coeffective::builder::strand_complex;
use coeffective::homology::cohomology_with;
use coeffective::structures::standard_symplectic;
use coeffective::sweeps::{symbol_sweep, Shape};
use coeffective::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn symbol(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbol_sweep");
    g.sample_size(10);
    for shape in [Shape::Symplectic { n: 3 }, Shape::G2] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, shape), &shape, |b, &shape| {
                b.iter(|| symbol_sweep(shape, 32, 7, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn strands(c: &mut Criterion) {
    let cal = standard_symplectic(3).unwrap();
    let mut g = c.benchmark_group("strand_ranks");
    g.sample_size(10);
    for h in [3usize, 4] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, h), &h, |b, &h| {
                b.iter(|| {
                    let ec = strand_complex(&cal, h, exec).unwrap();
                    cohomology_with(&ec.complex, exec)
                })
            });
        }
    }
    g.finish();
}

criterion_group!(benches, symbol, strands);
criterion_main!(benches);
