use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use relcirc::random::{self, NetlistShape};
use relcirc::{denote, netlist_to_relation_direct, netlist_to_term, Rational, Term};

fn series_chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_chain");
    for n in [100, 1000] {
        let chain = Term::seq_all((0..n).map(|k| Term::resistor(Rational::from_integer(k.into()))))
            .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &chain, |b, t| {
            b.iter(|| denote(black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn netlists(c: &mut Criterion) {
    let mut rng = random::rng(1);
    let nets: Vec<_> = (0..20)
        .map(|_| random::netlist(&mut rng, &NetlistShape::default()))
        .collect();
    let terms: Vec<Term> = nets.iter().map(netlist_to_term).collect();
    c.bench_function("netlist_compositional", |b| {
        b.iter(|| terms.iter().map(|t| denote(t).unwrap().dim()).count())
    });
    c.bench_function("netlist_direct", |b| {
        b.iter(|| {
            nets.iter()
                .map(|n| netlist_to_relation_direct(n).dim())
                .count()
        })
    });
}

fn electric_terms(c: &mut Criterion) {
    let mut rng = random::rng(2);
    let terms: Vec<Term> = (0..20)
        .map(|_| random::electric_term(&mut rng, 200))
        .collect();
    c.bench_function("electric_term_200", |b| {
        b.iter(|| terms.iter().map(|t| denote(t).unwrap().dim()).count())
    });
}

criterion_group!(benches, series_chain, netlists, electric_terms);
criterion_main!(benches);
