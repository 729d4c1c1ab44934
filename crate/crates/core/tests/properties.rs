use std::collections::BTreeSet;
use std::sync::Arc;

use mknf_core::aft::{Approximator, LatticePair};
use mknf_core::entailment::{TheoryBacked, TruthTable};
use mknf_core::headcut::enumerate_headcuts;
use mknf_core::partition::is_saturated;
use mknf_core::qfix::{
    candidate, candidate_count, check_model, covers_admissible_cut, enumerate_models, induced_normal_kbs, lfp_q, q_step,
    true_atoms_from_undefined,
};
use mknf_core::sample::{random_kb, Shape};
use mknf_core::syntax::RuleSyntax;
use mknf_core::{parse_kb, render_kb, AtomSet, KnowledgeBase, Partition, Reasoner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subset(rng: &mut impl Rng, of: &AtomSet) -> AtomSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn random_partition(rng: &mut impl Rng, kb: &KnowledgeBase) -> Partition {
    candidate(kb, rng.gen_range(0..candidate_count(kb)))
}

#[test]
fn q_step_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 500 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 3).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        let part = random_partition(&mut rng, &kb);
        let Some(cut) = enumerate_headcuts(&kb, &part).next() else { continue };
        let big = random_subset(&mut rng, kb.ka());
        let small = random_subset(&mut rng, &big);
        assert!(q_step(&r, &part, &cut, &small).is_subset(&q_step(&r, &part, &cut, &big)));
        checked += 1;
    }
}

#[test]
fn fixpoints_stay_within_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 3).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        for _ in 0..10 {
            let part = random_partition(&mut rng, &kb);
            if !is_saturated(&r, &part).is_saturated() {
                continue;
            }
            for cut in enumerate_headcuts(&kb, &part) {
                assert!(lfp_q(&r, &part, &cut).is_subset(part.p()));
                assert!(true_atoms_from_undefined(&r, &part, &cut).is_empty());
            }
        }
    }
}

fn random_pair_below(rng: &mut impl Rng, universe: &AtomSet) -> (LatticePair, LatticePair) {
    let lo2 = random_subset(rng, universe);
    let hi2 = random_subset(rng, universe);
    let lo1 = random_subset(rng, &lo2);
    let mut hi1 = hi2.clone();
    hi1.union_with(&random_subset(rng, universe));
    (LatticePair::new(lo1, hi1), LatticePair::new(lo2, hi2))
}

#[test]
fn approximator_and_revision_are_precision_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 1).with_axioms(2));
        let a = Approximator::new(Reasoner::new(&kb).unwrap()).unwrap();
        let (p, q) = random_pair_below(&mut rng, a.universe());
        assert!(p.precision_le(&q));
        assert!(a.phi(&p).precision_le(&a.phi(&q)));
        assert!(a.stable_revision(&p).precision_le(&a.stable_revision(&q)));
    }
}

#[test]
fn consistent_exact_images_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..300 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 1).with_axioms(2));
        let a = Approximator::new(Reasoner::new(&kb).unwrap()).unwrap();
        let x = random_subset(&mut rng, a.universe());
        let image = a.phi(&LatticePair::new(x.clone(), x));
        if image.is_consistent() {
            assert!(image.is_exact(), "{}", render_kb(&kb));
        }
    }
}

#[test]
fn well_founded_is_below_every_stable_fixpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..60 {
        let kb = random_kb(&mut rng, Shape::program(4, 4, 1).with_axioms(1));
        let a = Approximator::new(Reasoner::new(&kb).unwrap()).unwrap();
        let wf = a.well_founded();
        for i in 0..candidate_count(&kb) {
            let pair = LatticePair::from(candidate(&kb, i));
            if a.is_stable_fixpoint(&pair) {
                assert!(wf.precision_le(&pair), "{}", render_kb(&kb));
            }
        }
    }
}

#[test]
fn normal_kbs_agree_with_headcut_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..60 {
        let kb = random_kb(&mut rng, Shape::program(4, 4, 1).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        let a = Approximator::new(r.clone()).unwrap();
        for i in 0..candidate_count(&kb) {
            let part = candidate(&kb, i);
            assert_eq!(
                a.check_model_normal(&LatticePair::from(&part)).unwrap(),
                check_model(&r, &part).is_model(),
                "{}\n{}",
                render_kb(&kb),
                part.display(&kb)
            );
        }
    }
}

/// Whether `normal` has a model over the lattice of the original KB.
fn has_model(r: &Reasoner<'_>, normal: &KnowledgeBase, original: &KnowledgeBase) -> bool {
    let a = Approximator::with_universe(r.rebind(normal), original.ka().clone()).unwrap();
    (0..candidate_count(original)).any(|i| a.check_model_normal(&LatticePair::from(candidate(original, i))).unwrap())
}

#[test]
fn inconsistent_induced_kbs_rule_out_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut fired = 0;
    for _ in 0..400 {
        let kb = random_kb(&mut rng, Shape::program(3, 3, 2).with_axioms(3));
        let r = Reasoner::new(&kb).unwrap();
        let inconsistent: Vec<_> = induced_normal_kbs(&kb).filter(|n| !has_model(&r, &n.kb, &kb)).collect();
        for i in 0..candidate_count(&kb) {
            let part = candidate(&kb, i);
            if !is_saturated(&r, &part).is_saturated() {
                continue;
            }
            for normal in &inconsistent {
                if covers_admissible_cut(&kb, &part, normal) {
                    fired += 1;
                    assert!(!check_model(&r, &part).is_model());
                }
            }
        }
    }
    assert!(fired > 0);
}

#[test]
fn inconsistent_induced_kb_outside_every_cut() {
    // Choosing `a` gives an inconsistent normal KB, yet ({b}, {b}) is a model:
    // the cut {(1, b)} is not contained in that choice.
    let kb = parse_kb("#ont ~a.\na ; b.").unwrap();
    let r = Reasoner::new(&kb).unwrap();
    let part = mknf_core::parse_partition(&kb, "T: b. P: b.").unwrap();
    assert!(check_model(&r, &part).is_model());
    let normals: Vec<_> = induced_normal_kbs(&kb).collect();
    let choose_a = normals.iter().find(|n| n.cut.heads().contains(kb.id_of("a").unwrap())).unwrap();
    assert!(!has_model(&r, &choose_a.kb, &kb));
    assert!(!covers_admissible_cut(&kb, &part, choose_a));
}

#[test]
fn models_do_not_depend_on_rule_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    for _ in 0..60 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 3).with_axioms(2));
        let mut rules: Vec<RuleSyntax> = kb.rule_syntax();
        rules.shuffle(&mut rng);
        let shuffled = KnowledgeBase::new(kb.ontology_syntax(), rules).unwrap();
        let names = |kb: &KnowledgeBase| -> BTreeSet<(Vec<String>, Vec<String>)> {
            let r = Reasoner::new(kb).unwrap();
            enumerate_models(&r, 12)
                .unwrap()
                .models
                .iter()
                .map(|p| {
                    let mut t: Vec<String> = kb.names(p.t()).map(str::to_owned).collect();
                    let mut pp: Vec<String> = kb.names(p.p()).map(str::to_owned).collect();
                    t.sort();
                    pp.sort();
                    (t, pp)
                })
                .collect()
        };
        assert_eq!(names(&kb), names(&shuffled));
    }
}

#[test]
fn rendering_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..300 {
        let kb = random_kb(&mut rng, Shape::program(6, 6, 3).with_axioms(3));
        assert_eq!(parse_kb(&render_kb(&kb)).unwrap(), kb);
    }
}

#[test]
fn reference_entailment_gives_same_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..40 {
        let kb = random_kb(&mut rng, Shape::program(4, 4, 2).with_axioms(3));
        let fast = Reasoner::new(&kb).unwrap();
        let slow = Reasoner::with_procedure(&kb, Arc::new(TheoryBacked::new(&kb, TruthTable::default())));
        for i in 0..candidate_count(&kb) {
            let part = candidate(&kb, i);
            assert_eq!(check_model(&fast, &part), check_model(&slow, &part));
        }
    }
}
