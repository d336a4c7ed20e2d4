//! Acceptance criteria, one test per criterion. Each test writes a single
//! `criterion N ... PASS|FAIL` line to stderr before asserting.

use std::io::Write;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superll::gen::Gen;
use superll::presets::{check_native, decode_native, encode_native, native_sequent};
use superll::proof::exchange_to;
use superll::search::{search_cutfree, SearchBudget, SearchResult};
use superll::transform::{
    eliminate_cut, eliminate_subsumption, expand_axioms, forget_to_ll, girardize,
};
use superll::*;

const CUT_PROOFS: usize = 500;
const CUT_DEPTH: usize = 8;
const CUT_TIME_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_MIN: usize = 100;
const ORACLE_MAX_FORMULAS: usize = 6;
const REWRITE_PROOFS: usize = 200;
const EXPAND_FORMULAS: usize = 200;
const EXPAND_SIZE: usize = 12;
const ROUND_TRIPS: usize = 100;
const FORGET_PROOFS: usize = 200;
const PROPERTY_CASES: u32 = 10_000;
const AXIOM_BOUNDS: Bounds = Bounds { k: 6, n: 6 };

fn line(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    // Written past the test harness capture so that it always shows.
    let _ = writeln!(
        std::io::stderr(),
        "\ncriterion {n} {name}: {verdict} ({detail})"
    );
}

fn preset(name: &str) -> (PresetId, Instance) {
    let id = PresetId::from_name(name).unwrap();
    let inst = make_preset(&id).unwrap();
    (id, inst)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn valid(inst: &Instance, p: &Proof) -> bool {
    check_proof(inst, p, &CheckOptions::default()).is_ok()
}

fn broken_instance() -> Instance {
    parse_instance(include_str!("data/broken.inst")).unwrap()
}

/// The cut proofs of criterion 1 with their cut-free forms.
fn cut_corpus(inst: &Instance, seed: u64) -> Vec<(Proof, Result<Proof, String>)> {
    let mut r = rng(seed);
    let mut g = Gen::new(inst, &mut r);
    (0..CUT_PROOFS)
        .map(|_| {
            let p = g.with_cut(CUT_DEPTH);
            let q = eliminate_cut(inst, &p)
                .map(|(q, _)| q)
                .map_err(|e| e.to_string());
            (p, q)
        })
        .collect()
}

#[test]
fn criterion_1_cut_elimination() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for (k, id) in PresetId::all().iter().enumerate() {
        let inst = make_preset(id).unwrap();
        for (p, q) in cut_corpus(&inst, k as u64) {
            total += 1;
            assert!(valid(&inst, &p) && !p.is_cut_free() && p.depth() <= CUT_DEPTH);
            let ok = match &q {
                Ok(q) => q.is_cut_free() && valid(&inst, q) && q.conclusion.perm_eq(&p.conclusion),
                Err(_) => false,
            };
            if !ok && failures.len() < 3 {
                failures.push(format!("{id}: {p} -> {q:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed <= CUT_TIME_LIMIT;
    line(
        1,
        "cut elimination",
        pass,
        &format!("{total} proofs, {:.1}s", elapsed.as_secs_f64()),
    );
    assert!(pass, "{failures:#?} in {elapsed:?}");
}

fn max_contraction(p: &Proof) -> usize {
    let own = match &p.rule {
        Rule::Co { from, .. } => from.len(),
        _ => 0,
    };
    p.premises.iter().map(max_contraction).fold(own, usize::max)
}

#[test]
fn criterion_2_search_oracle() {
    let mut confirmed = 0;
    let mut disagreements = Vec::new();
    let mut inconclusive = 0;
    for (k, id) in PresetId::all().iter().enumerate() {
        let inst = make_preset(id).unwrap();
        let mut tried = 0;
        for (_, q) in cut_corpus(&inst, k as u64) {
            let Ok(q) = q else { continue };
            if q.conclusion.len() > ORACLE_MAX_FORMULAS || tried >= 40 {
                continue;
            }
            tried += 1;
            let arity = max_contraction(&q).max(3);
            let budget = SearchBudget {
                max_depth: q.depth() + 4,
                max_nodes: 100_000,
                max_contraction_arity: arity,
                ..SearchBudget::default()
            };
            match search_cutfree(&inst, &q.conclusion, &budget).result {
                SearchResult::Found(s) => {
                    assert!(valid(&inst, &s) && s.is_cut_free() && s.conclusion == q.conclusion);
                    confirmed += 1;
                }
                SearchResult::Exhausted => inconclusive += 1,
                SearchResult::NotProvableWithinBudget => {
                    disagreements.push(format!("{id}: {}", q.conclusion))
                }
            }
        }
    }
    let pass = confirmed >= ORACLE_MIN && disagreements.is_empty();
    line(
        2,
        "search oracle",
        pass,
        &format!(
            "{confirmed} confirmed, {} disagreements, {inconclusive} over budget",
            disagreements.len()
        ),
    );
    assert!(pass, "{disagreements:#?}");
}

#[test]
fn criterion_3_broken_instance() {
    let inst = broken_instance();
    let derivation = proof::parse_proof(include_str!("data/broken.sp")).unwrap();
    let validates = valid(&inst, &derivation);
    let report = check_cut_axioms(&inst, Bounds { k: 6, n: 6 });
    let ce2 = report
        .counterexamples
        .iter()
        .find(|c| c.axiom == "ce2")
        .map(|c| c.to_string());
    let goal = parse_sequent("|- !e' X^, ?e (X * X), ?e X^").unwrap();
    let out = search_cutfree(&inst, &goal, &SearchBudget::new(12, 100_000));
    let pass = validates
        && derivation.conclusion.perm_eq(&goal)
        && ce2.is_some()
        && out.result == SearchResult::NotProvableWithinBudget;
    line(
        3,
        "broken instance",
        pass,
        &format!(
            "derivation valid={validates}, {}, search {} after {} nodes",
            ce2.as_deref().unwrap_or("no ce2 violation"),
            out.result,
            out.nodes
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_4_axiom_tables() {
    let mut failed = Vec::new();
    for id in PresetId::all() {
        let inst = make_preset(&id).unwrap();
        if !check_cut_axioms(&inst, AXIOM_BOUNDS).passed() {
            failed.push(format!("{id} cut"));
        }
        if !check_expansion_axiom(&inst).passed() {
            failed.push(format!("{id} expansion"));
        }
    }
    for name in ["sell", "bsll", "ll-full", "shift"] {
        let (_, inst) = preset(name);
        if !check_girardization_axioms(&inst, AXIOM_BOUNDS).passed() {
            failed.push(format!("{name} girardization"));
        }
    }
    let (_, lll) = preset("lll");
    if !check_subsumption_axioms(&lll, AXIOM_BOUNDS).passed() {
        failed.push("lll subsumption".into());
    }
    let pass = failed.is_empty();
    line(
        4,
        "axiom tables at (6,6)",
        pass,
        &format!("failed: {failed:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_5_girardization_and_subsumption() {
    let mut bad = Vec::new();
    let mut runs = 0;
    let cases: [(&str, bool); 5] = [
        ("sell", true),
        ("bsll", true),
        ("ll-full", true),
        ("shift", true),
        ("lll", false),
    ];
    for (k, (name, girard)) in cases.into_iter().enumerate() {
        let (_, inst) = preset(name);
        let mut r = rng(500 + k as u64);
        let mut g = Gen::new(&inst, &mut r);
        for _ in 0..REWRITE_PROOFS {
            let p = g.cutfree(7);
            runs += 1;
            let out = if girard {
                girardize(&inst, &p)
            } else {
                eliminate_subsumption(&inst, &p)
            };
            let ok = match &out {
                Ok((q, _)) => {
                    let clean = if girard {
                        !q.any(&|r| matches!(r, Rule::Prom { .. } | Rule::Dg { .. }))
                    } else {
                        !q.any(&|r| match r {
                            Rule::Prom { .. } => true,
                            Rule::Co { from, .. } => from.len() == 1,
                            _ => false,
                        })
                    };
                    clean
                        && q.is_cut_free()
                        && valid(&inst, q)
                        && q.conclusion.perm_eq(&p.conclusion)
                }
                Err(_) => false,
            };
            if !ok && bad.len() < 3 {
                bad.push(format!("{name}: {p} -> {:?}", out.map(|o| o.0.to_string())));
            }
        }
    }
    let pass = bad.is_empty();
    line(
        5,
        "girardization and subsumption elimination",
        pass,
        &format!("{runs} proofs"),
    );
    assert!(pass, "{bad:#?}");
}

#[test]
fn criterion_6_axiom_expansion() {
    let mut bad = Vec::new();
    let mut runs = 0;
    for (k, id) in PresetId::all().iter().enumerate() {
        let inst = make_preset(id).unwrap();
        let mut r = rng(600 + k as u64);
        let mut g = Gen::new(&inst, &mut r);
        for _ in 0..EXPAND_FORMULAS {
            let n = g_size(k, runs);
            let a = g.formula(n);
            runs += 1;
            let p = Proof::ax(a.clone());
            let ok = match expand_axioms(&inst, &p) {
                Ok((q, _)) => {
                    valid(&inst, &q)
                        && q.conclusion == p.conclusion
                        && !q.any(&|r| matches!(r, Rule::Ax(f) if !f.is_atomic()))
                }
                Err(_) => false,
            };
            if !ok && bad.len() < 3 {
                bad.push(format!("{id}: {a}"));
            }
        }
    }
    let pass = bad.is_empty();
    line(6, "axiom expansion", pass, &format!("{runs} formulas"));
    assert!(pass, "{bad:#?}");
}

fn g_size(k: usize, run: usize) -> usize {
    1 + (k * 7 + run * 5) % EXPAND_SIZE
}

#[test]
fn criterion_7_native_round_trips() {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (k, name) in ["sll", "lll", "sell", "bsll", "ell"]
        .into_iter()
        .enumerate()
    {
        let (id, inst) = preset(name);
        let sys = id.native_system();
        let mut r = rng(700 + k as u64);
        let mut g = Gen::new(&inst, &mut r);
        let mut done = 0;
        let mut attempts = 0;
        while done < ROUND_TRIPS && attempts < 20 * ROUND_TRIPS {
            attempts += 1;
            let p = if attempts % 3 == 0 {
                g.with_cut(6)
            } else {
                g.cutfree(6)
            };
            // Native proofs are produced by decoding random superLL proofs.
            let Ok(np) = decode_native(&id, &p) else {
                continue;
            };
            if check_native(&sys, &np).is_err() {
                bad.push(format!("{name}: decoded proof does not check natively"));
                continue;
            }
            done += 1;
            let back = encode_native(&id, &np).and_then(|e| {
                let ok = valid(&inst, &e);
                decode_native(&id, &e).map(|d| (e, d, ok))
            });
            let ok = match &back {
                Ok((e, d, encoded_valid)) => {
                    *encoded_valid
                        && check_native(&sys, d).is_ok()
                        && d.conclusion.perm_eq(&np.conclusion)
                        && native_sequent(&id, &e.conclusion).perm_eq(&np.conclusion)
                        && (!np.is_cut_free() || (e.is_cut_free() && d.is_cut_free()))
                }
                Err(_) => false,
            };
            if !ok && bad.len() < 3 {
                bad.push(format!(
                    "{name}: {np} -> {:?}",
                    back.map(|b| b.1.to_string())
                ));
            }
        }
        counts.push(format!("{name}={done}"));
        if done < ROUND_TRIPS {
            bad.push(format!("{name}: only {done} native proofs"));
        }
    }
    let pass = bad.is_empty();
    line(7, "native round trips", pass, &counts.join(" "));
    assert!(pass, "{bad:#?}");
}

#[test]
fn criterion_8_forgetful_map() {
    let ll = make_preset(&PresetId::LlFull).unwrap();
    let mut bad = Vec::new();
    let mut runs = 0;
    for (k, id) in PresetId::all().iter().enumerate() {
        let inst = make_preset(id).unwrap();
        let mut r = rng(800 + k as u64);
        let mut g = Gen::new(&inst, &mut r);
        for _ in 0..FORGET_PROOFS / PresetId::all().len() + 1 {
            let p = g.with_cut(7);
            runs += 1;
            let ok = (|| -> Option<bool> {
                let f = forget_to_ll(&p).ok()?;
                let forget_first = eliminate_cut(&ll, &f).ok()?.0;
                let cut_first = forget_to_ll(&eliminate_cut(&inst, &p).ok()?.0).ok()?;
                Some(
                    valid(&ll, &f)
                        && [&forget_first, &cut_first].iter().all(|q| {
                            q.is_cut_free() && valid(&ll, q) && q.conclusion.perm_eq(&f.conclusion)
                        }),
                )
            })()
            .unwrap_or(false);
            if !ok && bad.len() < 3 {
                bad.push(format!("{id}: {p}"));
            }
        }
    }
    let pass = bad.is_empty();
    line(8, "forgetful map to LL", pass, &format!("{runs} proofs"));
    assert!(pass, "{bad:#?}");
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let sig = prop::sample::select(vec!["dot", "star", "a", "b"]).prop_map(Signature::new);
    let leaf = prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Formula::atom),
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Formula::neg_atom),
        Just(Formula::One),
        Just(Formula::Bot),
        Just(Formula::Top),
        Just(Formula::Zero),
    ];
    leaf.prop_recursive(5, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            (sig.clone(), inner.clone()).prop_map(|(e, a)| Formula::bang(e, a)),
            (sig.clone(), inner).prop_map(|(e, a)| Formula::quest(e, a)),
        ]
    })
}

fn run_property<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

#[test]
fn criterion_9_structural_properties() {
    let mut results = Vec::new();
    results.push((
        "duality involution",
        run_property(arb_formula(), |a| {
            prop_assert_eq!(a.dual().dual(), a.clone());
            prop_assert_eq!(formula_size(&a.dual()), formula_size(&a));
            Ok(())
        }),
    ));
    results.push((
        "parser round trip",
        run_property(arb_formula(), |a| {
            prop_assert_eq!(parse_formula(&a.to_string()).unwrap(), a);
            Ok(())
        }),
    ));
    let ll = make_preset(&PresetId::LlFull).unwrap();
    results.push((
        "exchange invariance of size",
        run_property((any::<u64>(), any::<u64>()), |(seed, shuffle)| {
            let mut r = rng(seed);
            let p = Gen::new(&ll, &mut r).cutfree(5);
            let mut order = p.conclusion.0.clone();
            let n = order.len();
            if n > 1 {
                order.rotate_left((shuffle as usize) % n);
            }
            let q = exchange_to(p.clone(), &Sequent(order)).unwrap();
            prop_assert_eq!(
                proof_size(&q, SizeMode::ExchangeFree),
                proof_size(&p, SizeMode::ExchangeFree)
            );
            prop_assert!(proof_size(&q, SizeMode::Raw) >= proof_size(&p, SizeMode::Raw));
            prop_assert!(check_proof(&ll, &q, &CheckOptions::default()).is_ok());
            Ok(())
        }),
    ));
    let seq = prop::collection::vec(arb_formula(), 0..5);
    results.push((
        "permutation equality laws",
        run_property((seq, any::<u64>(), any::<u64>()), |(v, s1, s2)| {
            let g1 = Sequent(v.clone());
            let mut w = v.clone();
            if !w.is_empty() {
                let k = (s1 as usize) % w.len();
                w.rotate_left(k);
                let n = w.len();
                w.swap(0, (s2 as usize) % n);
            }
            let g2 = Sequent(w.clone());
            let mut u = w.clone();
            u.reverse();
            let g3 = Sequent(u);
            prop_assert!(sequent_perm_eq(&g1, &g1));
            prop_assert!(sequent_perm_eq(&g1, &g2) && sequent_perm_eq(&g2, &g1));
            prop_assert!(sequent_perm_eq(&g2, &g3) && sequent_perm_eq(&g1, &g3));
            let mut longer = v;
            longer.push(Formula::One);
            prop_assert!(!sequent_perm_eq(&g1, &Sequent(longer)));
            Ok(())
        }),
    ));
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    let pass = failed.is_empty();
    line(
        9,
        "structural properties",
        pass,
        &format!("{} properties x {PROPERTY_CASES} cases", results.len()),
    );
    assert!(pass, "{failed:#?}");
}
