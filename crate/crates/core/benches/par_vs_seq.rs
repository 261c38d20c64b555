use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use grothendieck::coeffs::lr_count;
use grothendieck::groth::{groth_poly, Kind};
use grothendieck::par::Execution;
use grothendieck::ring::Params;
use grothendieck::shapes::{Partition, SkewShape};
use grothendieck::verify::{Options, Suite};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn tableau_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("groth_poly");
    g.sample_size(10);
    let params = Params::symbolic();
    for shape in ["2,1", "2,2"] {
        let theta: SkewShape = shape.parse().unwrap();
        for (name, exec) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, format!("{shape}, n=4")), &theta, |b, t| {
                b.iter(|| groth_poly(t, 4, Kind::FactorialA, &params, exec))
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("lr_count");
    let theta: SkewShape = "3,2,1/1".parse().unwrap();
    let (mu, nu) = (Partition::of(&[2, 1]), Partition::of(&[4, 3, 2, 1]));
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::new(name, "3,2,1/1 on 2,1 -> 4,3,2,1, n=4"), |b| {
            b.iter(|| lr_count(&theta, &mu, &nu, 4, exec))
        });
    }
    g.finish();
}

fn suite_grids(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let opts = Options { exec, ..Options::default() };
        g.bench_function(BenchmarkId::new(name, "row-shape"), |b| b.iter(|| Suite::RowShape.run(&opts)));
    }
    g.finish();
}

criterion_group!(benches, tableau_sums, suite_grids);
criterion_main!(benches);
