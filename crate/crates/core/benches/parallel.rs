use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::SeedableRng;

use universo::coloring::Coloring;
use universo::design::brute_force_a_with;
use universo::graph::generators::{clique_union, complete_bipartite, random_balanced_bipartite_forest};
use universo::oracle::{min_equitable_deletion_with, min_universal_size_with, OracleBudget};
use universo::universal::{build_sqrt_universal, verify_universal_with};
use universo::{Execution, FamilySpec, Graph};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn verify_811(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(10);
    let members: Vec<Graph> = (0..811).map(|_| random_balanced_bipartite_forest(10, &mut rng)).collect();
    let family = FamilySpec::new(members).unwrap();
    let halves = Coloring::new(vec![(0..10).collect(), (10..20).collect()], Vec::new()).unwrap();
    let u = build_sqrt_universal(&family, 2, 0, &vec![halves; 811]).unwrap();
    let mut group = c.benchmark_group("verify_811_members");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_universal_with(&u, &family, exec))
        });
    }
    group.finish();
}

fn oracle_min_universal(c: &mut Criterion) {
    let family = FamilySpec::new((1..=3).map(|i| clique_union(4, i).unwrap()).collect()).unwrap();
    let budget = OracleBudget::default();
    let mut group = c.benchmark_group("min_universal_4_3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| min_universal_size_with(&family, &budget, exec).unwrap())
        });
    }
    group.finish();
}

fn exact_packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_packing_10_3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| brute_force_a_with(10, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn min_deletion(c: &mut Criterion) {
    let g = complete_bipartite(2, 9);
    let budget = OracleBudget::default();
    let mut group = c.benchmark_group("min_deletion_k2_9");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| min_equitable_deletion_with(&g, 2, &budget, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verify_811, oracle_min_universal, exact_packing, min_deletion);
criterion_main!(benches);
