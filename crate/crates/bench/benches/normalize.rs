//! Benchmarks comparing the three normalization strategies and the raw
//! traversal enumeration.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lamtrav_core::{
    build_ctree, enumerate_maximal, ll_reduce, normal_order, normalize_by_traversals, parse,
    trivial_finish, Mode, Term,
};

fn church(k: usize) -> Term {
    let mut body = Term::var("z");
    for _ in 0..k {
        body = Term::app(Term::var("s"), body);
    }
    Term::abs("s", Term::abs("z", body))
}

fn subjects() -> Vec<(&'static str, Term)> {
    let add = parse("\\m n s z. m s (n s z)").unwrap();
    let mul = parse("\\m n s. m (n s)").unwrap();
    let varity = parse("\\t. t (\\n a x. n (\\s z. a s (x s z))) (\\a. a) (\\z0. z0)").unwrap();
    vec![
        ("baby", parse("(\\x. x x)(\\y. y)").unwrap()),
        ("add_2_3", Term::app(Term::app(add, church(2)), church(3))),
        ("mul_3_3", Term::app(Term::app(mul, church(3)), church(3))),
        ("varity_two", Term::app(varity, parse("\\s z. s (s z)").unwrap())),
    ]
}

fn bench_strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (name, term) in subjects() {
        group.bench_with_input(BenchmarkId::new("traversal", name), &term, |b, t| {
            b.iter(|| normalize_by_traversals(t, 1_000_000).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("linear", name), &term, |b, t| {
            b.iter(|| trivial_finish(&ll_reduce(t, 1_000_000).unwrap()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("normal_order", name), &term, |b, t| {
            b.iter(|| normal_order(t, 1_000_000).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_maximal");
    for (name, term) in subjects() {
        let tree = build_ctree(&term);
        group.bench_with_input(BenchmarkId::from_parameter(name), &tree, |b, tree| {
            b.iter(|| enumerate_maximal(tree, Mode::Normalizing, 1_000_000).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_strategies, bench_enumeration);
criterion_main!(benches);
