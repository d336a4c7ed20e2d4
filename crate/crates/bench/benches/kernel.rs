use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superll::gen::Gen;
use superll::search::{search_cutfree, SearchBudget};
use superll::transform::{eliminate_cut, girardize};
use superll::{
    check_cut_axioms, check_proof, make_preset, parse_instance, parse_sequent, Bounds,
    CheckOptions, Instance, PresetId, Proof,
};

const CORPUS: usize = 64;

fn corpus(inst: &Instance, cut: bool) -> Vec<Proof> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut g = Gen::new(inst, &mut rng);
    (0..CORPUS)
        .map(|_| if cut { g.with_cut(8) } else { g.cutfree(7) })
        .collect()
}

fn checking(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_proof");
    for name in ["ll-full", "sell", "bsll"] {
        let inst = make_preset(&PresetId::from_name(name).unwrap()).unwrap();
        let proofs = corpus(&inst, true);
        group.bench_with_input(BenchmarkId::from_parameter(name), &proofs, |b, ps| {
            b.iter(|| {
                for p in ps {
                    check_proof(&inst, black_box(p), &CheckOptions::default()).unwrap();
                }
            })
        });
    }
    group.finish();
}

fn cut_elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate_cut");
    for id in PresetId::all() {
        let inst = make_preset(&id).unwrap();
        let proofs = corpus(&inst, true);
        group.bench_with_input(BenchmarkId::from_parameter(id.name()), &proofs, |b, ps| {
            b.iter(|| {
                for p in ps {
                    black_box(eliminate_cut(&inst, p).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn girardization(c: &mut Criterion) {
    let inst = make_preset(&PresetId::LlFull).unwrap();
    let proofs = corpus(&inst, false);
    c.bench_function("girardize/ll-full", |b| {
        b.iter(|| {
            for p in &proofs {
                black_box(girardize(&inst, p).unwrap());
            }
        })
    });
}

fn search(c: &mut Criterion) {
    let broken =
        parse_instance("signatures: e e'\nco 1: e' -> e\np: e = >=2\np: e' = {1}\n").unwrap();
    let goal = parse_sequent("|- !e' X^, ?e (X * X), ?e X^").unwrap();
    c.bench_function("search/broken-instance", |b| {
        b.iter(|| search_cutfree(&broken, black_box(&goal), &SearchBudget::new(12, 100_000)))
    });
    let ll = make_preset(&PresetId::LlFull).unwrap();
    let goal = parse_sequent("|- ?dot X^, ?dot Y^, !dot (X * Y)").unwrap();
    c.bench_function("search/ll-full-promotion", |b| {
        b.iter(|| search_cutfree(&ll, black_box(&goal), &SearchBudget::default()))
    });
}

fn axiom_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_cut_axioms");
    group.sample_size(10);
    for name in ["sell", "bsll"] {
        let id = PresetId::from_name(name).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                // A fresh instance so that no cached report is reused.
                let inst = make_preset(&id).unwrap();
                check_cut_axioms(&inst, Bounds { k: 4, n: 4 })
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    checking,
    cut_elimination,
    girardization,
    search,
    axiom_tables
);
criterion_main!(benches);
