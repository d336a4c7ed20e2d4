use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superll::gen::Gen;
use superll::proof::{exchange_to, infer};
use superll::search::{search_cutfree, SearchBudget, SearchResult};
use superll::*;

fn presets() -> Vec<(PresetId, Instance)> {
    PresetId::all()
        .into_iter()
        .map(|id| {
            let inst = make_preset(&id).unwrap();
            (id, inst)
        })
        .collect()
}

fn random_proof(inst: &Instance, seed: u64, cut: bool) -> Proof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Gen::new(inst, &mut rng);
    if cut {
        g.with_cut(7)
    } else {
        g.cutfree(6)
    }
}

fn subproofs(p: &Proof) -> Vec<&Proof> {
    let mut v = vec![p];
    for q in &p.premises {
        v.extend(subproofs(q));
    }
    v
}

/// Rebuilds `p` bottom-up through `infer`.
fn reinfer(inst: &Instance, p: &Proof) -> Result<Proof, proof::InferError> {
    let prems = p
        .premises
        .iter()
        .map(|q| reinfer(inst, q))
        .collect::<Result<Vec<_>, _>>()?;
    infer(inst, p.rule.clone(), prems)
}

/// Replaces every `Co([e], e)` by an exchange of its premise.
fn drop_trivial_co(p: &Proof) -> Proof {
    let premises: Vec<Proof> = p.premises.iter().map(drop_trivial_co).collect();
    match &p.rule {
        Rule::Co { from, to, .. } if from.len() == 1 && &from[0] == to => {
            exchange_to(premises.into_iter().next().unwrap(), &p.conclusion).unwrap()
        }
        rule => Proof {
            rule: rule.clone(),
            conclusion: p.conclusion.clone(),
            premises,
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn checking_is_monotone(seed in any::<u64>(), k in 0usize..8) {
        let (_, inst) = &presets()[k];
        let p = random_proof(inst, seed, seed % 2 == 0);
        prop_assert!(check_proof(inst, &p, &CheckOptions::default()).is_ok());
        for q in subproofs(&p) {
            prop_assert!(check_proof(inst, q, &CheckOptions::default()).is_ok());
        }
    }

    #[test]
    fn inferred_nodes_check(seed in any::<u64>(), k in 0usize..8) {
        let (_, inst) = &presets()[k];
        let p = random_proof(inst, seed, true);
        let q = reinfer(inst, &p).unwrap();
        prop_assert_eq!(&q.conclusion, &p.conclusion);
        prop_assert!(check_proof(inst, &q, &CheckOptions::strict()).is_ok());
    }

    #[test]
    fn trivial_contractions_can_be_dropped(seed in any::<u64>(), k in 0usize..8) {
        let (_, inst) = &presets()[k];
        let p = random_proof(inst, seed, seed % 3 == 0);
        let q = drop_trivial_co(&p);
        prop_assert!(check_proof(inst, &q, &CheckOptions::default()).is_ok());
        let trivial = q.any(&|r| matches!(r, Rule::Co { from, to, .. } if from.len() == 1 && &from[0] == to));
        prop_assert!(!trivial);
    }

    #[test]
    fn search_is_sound_deterministic_and_monotone(seed in any::<u64>(), k in 0usize..8) {
        let (_, inst) = &presets()[k];
        let p = random_proof(inst, seed, false);
        prop_assume!(p.conclusion.len() <= 4);
        let small = SearchBudget::new(4, 2_000);
        let first = search_cutfree(inst, &p.conclusion, &small);
        prop_assert_eq!(&first, &search_cutfree(inst, &p.conclusion, &small));
        if let SearchResult::Found(s) = &first.result {
            prop_assert!(check_proof(inst, s, &CheckOptions::strict()).is_ok());
            prop_assert!(s.is_cut_free());
            prop_assert_eq!(&s.conclusion, &p.conclusion);
            let deeper = SearchBudget::new(6, 8_000);
            prop_assert!(search_cutfree(inst, &p.conclusion, &deeper).result.is_found());
            let wider = SearchBudget {
                max_contraction_arity: 4,
                max_promotion_width: 10,
                max_digging_streak: 3,
                ..deeper
            };
            prop_assert_ne!(
                search_cutfree(inst, &p.conclusion, &wider).result,
                SearchResult::NotProvableWithinBudget
            );
        }
    }
}

#[test]
fn broken_counterexample_replays() {
    let inst = parse_instance(include_str!("data/broken.inst")).unwrap();
    let report = check_cut_axioms(&inst, Bounds { k: 6, n: 6 });
    let c = report
        .counterexamples
        .iter()
        .find(|c| c.axiom == "ce2")
        .unwrap();
    assert_eq!(c.to_string(), "ce2 k=1 e1=e' e=e n=2");
    let (e, e1) = (Signature::new("e"), Signature::new("e'"));
    let q = |query| eval_param(&inst, &query).unwrap();
    // The premises hold and the promotion it asks for does not.
    assert!(q(ParamQuery::Co(vec![e1.clone()], e.clone())));
    assert!(q(ParamQuery::P(2, e)));
    assert!(!q(ParamQuery::P(2, e1)));
}

#[test]
fn broken_derivation_is_refused_by_cut_elimination() {
    let inst = parse_instance(include_str!("data/broken.inst")).unwrap();
    let p = proof::parse_proof(include_str!("data/broken.sp")).unwrap();
    check_proof(&inst, &p, &CheckOptions::strict()).unwrap();
    let err = transform::eliminate_cut(&inst, &p).unwrap_err();
    assert!(err.to_string().contains("ce2"), "{err}");
}

#[test]
fn transforms_compose_on_ll() {
    let ll = make_preset(&PresetId::LlFull).unwrap();
    for seed in 0..50 {
        let p = random_proof(&ll, seed, true);
        let (q, _) = transform::eliminate_cut(&ll, &p).unwrap();
        let (g, _) = transform::girardize(&ll, &q).unwrap();
        let (x, _) = transform::expand_axioms(&ll, &g).unwrap();
        check_proof(&ll, &x, &CheckOptions::default()).unwrap();
        assert!(x.is_cut_free() && x.conclusion.perm_eq(&p.conclusion));
        assert!(!x.any(&|r| matches!(r, Rule::Ax(a) if !a.is_atomic())));
    }
}
