use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hopeprep_bench::instance;
use hopeprep_core::credal::{hull_union, is_subset, separating_profile};
use hopeprep_core::{check_axiom, Axiom, Relation};

fn compare(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_profiles");
    for n in [2, 4, 8] {
        let (spec, pairs) = instance(n, 5, 64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &pairs, |b, pairs| {
            b.iter(|| {
                for (f, g) in pairs {
                    black_box(spec.compare_profiles(f, g));
                }
            })
        });
    }
    group.finish();
}

fn set_programs(c: &mut Criterion) {
    let mut group = c.benchmark_group("set_programs");
    for n in [2, 4, 6] {
        let (spec, _) = instance(n, 5, 0);
        let (p, o) = (spec.pessimistic(), spec.optimistic());
        let hull = hull_union(&[p.clone(), o.clone()]).unwrap();
        group.bench_with_input(BenchmarkId::new("containment", n), &n, |b, _| {
            b.iter(|| black_box(is_subset(o, p).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("separation", n), &n, |b, _| {
            b.iter(|| black_box(separating_profile(&hull, p).unwrap()))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let (spec, _) = instance(3, 4, 0);
    let mut group = c.benchmark_group("check_axiom_100_trials");
    group.sample_size(10);
    for axiom in [Axiom::Continuity, Axiom::Monotonicity, Axiom::ConsonantEvidence] {
        group.bench_function(axiom.to_string(), |b| b.iter(|| black_box(check_axiom(&spec, axiom, 100, 1))));
    }
    group.finish();
}

criterion_group!(benches, compare, set_programs, axioms);
criterion_main!(benches);
