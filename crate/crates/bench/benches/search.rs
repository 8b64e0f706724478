use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maximin::fairness::{audit, weighted_maximin, Allocation};
use maximin::{dominates, mms, non_dominated_pairs, EntitlementVector, Instance, Pair, Rational};

fn spread(m: usize) -> Instance {
    // Deterministic, irregular values so the search cannot short-circuit on ties.
    Instance::from_values((0..m as u64).map(|i| (i * 37 + 11) % 53 + 1)).unwrap()
}

fn mms_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("mms");
    for m in [8, 12, 16] {
        let x = spread(m);
        for (l, d) in [(1, 3), (2, 5), (3, 7)] {
            let p = Pair::new(l, d).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{l}of{d}"), m), &x, |b, x| {
                b.iter(|| mms(black_box(x), p).unwrap())
            });
        }
    }
    group.finish();
}

fn dominance_grid(c: &mut Criterion) {
    let pairs: Vec<Pair> = Pair::grid(24).collect();
    c.bench_function("dominance/grid24", |b| {
        b.iter(|| {
            let mut count = 0usize;
            for &p in &pairs {
                for &q in &pairs {
                    count += usize::from(dominates(p, q));
                }
            }
            count
        })
    });
}

fn pair_filtration(c: &mut Criterion) {
    let a: Rational = "0.74".parse().unwrap();
    for m in [7, 30, 100] {
        c.bench_function(&format!("pairs/a=0.74/m={m}"), |b| {
            b.iter(|| non_dominated_pairs(black_box(&a), m).unwrap())
        });
    }
}

fn weighted(c: &mut Criterion) {
    let x = spread(10);
    let t = EntitlementVector::parse("1/6,1/3,1/2").unwrap();
    c.bench_function("wmms/10items/3agents", |b| b.iter(|| weighted_maximin(black_box(&x), &t).unwrap()));

    let alloc = Allocation::parse(&x, "0,1,2;3,4,5;6,7,8,9").unwrap();
    c.bench_function("audit/10items/3agents", |b| b.iter(|| audit(black_box(&x), &t, &alloc).unwrap()));
}

criterion_group!(benches, mms_search, dominance_grid, pair_filtration, weighted);
criterion_main!(benches);
