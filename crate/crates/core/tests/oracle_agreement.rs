use std::collections::BTreeSet;

use mknf_core::aft::{cross_check, Reading};
use mknf_core::headcut::enumerate_headcuts;
use mknf_core::oracles::{partial_stable_bruteforce, satisfies_program, two_valued_stable_bruteforce};
use mknf_core::partition::is_saturated;
use mknf_core::qfix::{candidate, candidate_count, check_model, enumerate_models};
use mknf_core::sample::{all_programs, random_kb, Shape};
use mknf_core::{AtomSet, KnowledgeBase, Partition, Reasoner, DEFAULT_SIG_CAP};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shown(kb: &KnowledgeBase, parts: &[Partition]) -> BTreeSet<String> {
    parts.iter().map(|p| p.display(kb).to_string()).collect()
}

fn assert_partial_stable(kb: &KnowledgeBase) {
    let r = Reasoner::new(kb).unwrap();
    let engine = enumerate_models(&r, 12).unwrap().models;
    let oracle = partial_stable_bruteforce(kb, 12).unwrap();
    assert_eq!(shown(kb, &engine), shown(kb, &oracle), "{}", mknf_core::render_kb(kb));
}

fn assert_two_valued(kb: &KnowledgeBase) {
    let r = Reasoner::new(kb).unwrap();
    let n = kb.ka().len();
    let mut engine = BTreeSet::new();
    for bits in 0u32..1 << n {
        let s: AtomSet = kb.ka_order().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &a)| a).collect();
        if check_model(&r, &Partition::total(kb, s.clone()).unwrap()).is_model() {
            engine.insert(kb.display_set(&s));
        }
    }
    let oracle: BTreeSet<String> =
        two_valued_stable_bruteforce(kb, 12).unwrap().iter().map(|s| kb.display_set(s)).collect();
    assert_eq!(engine, oracle, "{}", mknf_core::render_kb(kb));
}

#[test]
fn partial_stable_small_exhaustive() {
    for kb in all_programs(1, 2) {
        assert_partial_stable(&kb);
        assert_two_valued(&kb);
    }
}

#[test]
fn partial_stable_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 3));
        assert_partial_stable(&kb);
        assert_two_valued(&kb);
    }
}

#[test]
fn empty_cut_set_iff_unsatisfied() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let kb = random_kb(&mut rng, Shape::program(4, 4, 3).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        for i in 0..candidate_count(&kb) {
            let part = candidate(&kb, i);
            if !is_saturated(&r, &part).is_saturated() {
                continue;
            }
            let empty = enumerate_headcuts(&kb, &part).next().is_none();
            let sat = satisfies_program(&kb, &part, DEFAULT_SIG_CAP).unwrap();
            assert_eq!(empty, !sat, "{}\n{}", mknf_core::render_kb(&kb), part.display(&kb));
        }
    }
}

#[test]
fn cross_check_agrees_on_random_kbs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let kb = random_kb(&mut rng, Shape::program(4, 4, 2).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        for i in 0..candidate_count(&kb) {
            let part = candidate(&kb, i);
            let c = cross_check(&r, &part, Reading::Covering);
            assert!(c.agrees(), "{}\n{} {c:?}", mknf_core::render_kb(&kb), part.display(&kb));
        }
    }
}
