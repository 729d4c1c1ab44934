//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion has a wall-clock limit; exceeding it fails the criterion
//! even when every comparison agreed.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use mknf_core::aft::{cross_check, Approximator, LatticePair, Reading};
use mknf_core::headcut::enumerate_headcuts;
use mknf_core::oracles::{partial_stable_bruteforce, satisfies_program, two_valued_stable_bruteforce};
use mknf_core::qfix::{candidate, candidate_count, lfp_q, q_step};
use mknf_core::sample::{all_programs, random_kb, Shape};
use mknf_core::{
    check_model, enumerate_models, is_saturated, parse_kb, parse_pair, parse_partition, AtomSet, CheckStatus,
    KnowledgeBase, Partition, Reasoner, Witness, DEFAULT_SIG_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SECOND: Duration = Duration::from_secs(1);

fn testdata() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/testdata")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(testdata().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn kb(name: &str) -> KnowledgeBase {
    parse_kb(&read(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn part(kb: &KnowledgeBase, name: &str) -> Partition {
    parse_partition(kb, &read(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn set(kb: &KnowledgeBase, names: &[&str]) -> AtomSet {
    names.iter().map(|n| kb.id_of(n).unwrap_or_else(|| panic!("unknown atom {n}"))).collect()
}

fn cuts(kb: &KnowledgeBase, p: &Partition) -> Vec<String> {
    enumerate_headcuts(kb, p).map(|c| c.display(kb).to_string()).collect()
}

fn example_kbs() -> Vec<KnowledgeBase> {
    [
        "guarded_disjunctions.mknf",
        "shared_choice_c.mknf",
        "shared_choice_a.mknf",
        "undefined_conjunction.mknf",
        "mutual_support.mknf",
        "forcing_ontology.mknf",
        "normal_ontology.mknf",
        "even_loop.mknf",
        "odd_loop.mknf",
        "fact.mknf",
    ]
    .iter()
    .map(|n| kb(n))
    .collect()
}

/// Outcome of one criterion: `Err` carries the first discrepancy.
type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1() -> Outcome {
    let kb = kb("guarded_disjunctions.mknf");
    let two = ["{(1, a)}", "{(1, b)}"];
    for name in ["guarded_disjunctions_all_true.part", "guarded_disjunctions_q_undefined.part"] {
        let got = cuts(&kb, &part(&kb, name));
        ensure(got == two, || format!("{name}: {got:?}"))?;
    }
    let got = cuts(&kb, &part(&kb, "guarded_disjunctions_y_false.part"));
    ensure(got == ["{(1, a), (2, x)}", "{(1, b), (2, x)}"], || format!("T3: {got:?}"))?;
    let got = cuts(&kb, &part(&kb, "guarded_disjunctions_no_cut.part"));
    ensure(got.is_empty(), || format!("T4: {got:?}"))?;
    Ok("H sets for T1..T4 exact".into())
}

fn criterion2() -> Outcome {
    for (name, expected) in [("shared_choice_c.mknf", &["z", "a", "c", "d"][..]), ("shared_choice_a.mknf", &["z", "a", "c", "b", "d"][..])] {
        let kb = kb(name);
        let r = Reasoner::new(&kb).unwrap();
        let p = part(&kb, "shared_choice.part");
        let cut = mknf_core::HeadCut::from_pairs(
            &kb,
            [(1, "a"), (2, "c"), (3, "z")].map(|(r, h)| (r, kb.id_of(h).unwrap())),
        )
        .ok_or("cut rejected")?;
        let lfp = lfp_q(&r, &p, &cut);
        ensure(lfp == set(&kb, expected), || format!("{name}: lfp {}", kb.display_set(&lfp)))?;
    }
    Ok("O1 lfp {z,a,c,d} without b; O2 lfp {z,a,c,b,d}".into())
}

fn criterion3() -> Outcome {
    let kb = kb("undefined_conjunction.mknf");
    let r = Reasoner::new(&kb).unwrap();
    let v = check_model(&r, &part(&kb, "undefined_conjunction_model.part"));
    ensure(v.is_model(), || format!("({{a}},{{a,b,c}}): {v:?}"))?;
    let v = check_model(&r, &part(&kb, "undefined_conjunction_mismatch.part"));
    let ok = v.status == CheckStatus::FixpointMismatch
        && matches!(&v.witness, Some(Witness::Fixpoint { lfp, .. }) if *lfp == set(&kb, &["a", "b"]));
    ensure(ok, || format!("({{a,c}},{{a,b,c}}): {v:?}"))?;
    Ok("Model; FixpointMismatch with lfp {a,b}".into())
}

fn criterion4() -> Outcome {
    let kb = kb("mutual_support.mknf");
    let r = Reasoner::new(&kb).unwrap();
    let p = part(&kb, "mutual_support.part");
    let got = cuts(&kb, &p);
    let expected = ["{(1, a), (2, a), (3, b), (4, c), (5, d)}", "{(1, b), (2, a), (3, b), (4, c), (5, d)}"];
    ensure(got == expected, || format!("H = {got:?}"))?;
    for c in enumerate_headcuts(&kb, &p) {
        ensure(&lfp_q(&r, &p, &c) == p.p(), || format!("lfp for {} differs from P", c.display(&kb)))?;
    }
    let v = check_model(&r, &p);
    ensure(v.is_model(), || format!("{v:?}"))?;
    Ok("H = {R1, R2}, both lfps = P, Model".into())
}

fn criterion5() -> Outcome {
    let kb = kb("forcing_ontology.mknf");
    let r = Reasoner::new(&kb).unwrap();
    let t1 = part(&kb, "forcing_ontology_mismatch.part");
    let lfps: BTreeSet<(String, String)> = enumerate_headcuts(&kb, &t1)
        .map(|c| (c.display(&kb).to_string(), kb.display_set(&lfp_q(&r, &t1, &c))))
        .collect();
    let expected: BTreeSet<(String, String)> = [
        ("{(1, a), (2, x)}", "{a, x, y}"),
        ("{(1, b), (2, x)}", "{b, x, y}"),
        ("{(1, a), (2, y)}", "{a, x, y}"),
        ("{(1, b), (2, y)}", "{b, x, y}"),
    ]
    .iter()
    .map(|&(c, l)| (c.to_owned(), l.to_owned()))
    .collect();
    ensure(lfps == expected, || format!("T1 cut/lfp pairs {lfps:?}"))?;
    let v = check_model(&r, &t1);
    ensure(v.status == CheckStatus::FixpointMismatch, || format!("T1 {v:?}"))?;
    let v = check_model(&r, &part(&kb, "forcing_ontology_unsaturated.part"));
    let ok = v.status == CheckStatus::NotSaturated
        && matches!(v.witness, Some(Witness::Saturation(s)) if s.clause() == 3 && s.witness() == kb.id_of("b"));
    ensure(ok, || format!("T2 {v:?}"))?;
    let t3 = part(&kb, "forcing_ontology_model.part");
    let n = enumerate_headcuts(&kb, &t3).count();
    ensure(n == 2, || format!("T3 has {n} head-cuts"))?;
    for c in enumerate_headcuts(&kb, &t3) {
        ensure(&lfp_q(&r, &t3, &c) == t3.p(), || format!("T3 lfp for {}", c.display(&kb)))?;
    }
    ensure(check_model(&r, &t3).is_model(), || "T3 not a model".into())?;
    Ok("T1 four lfps + FixpointMismatch; T2 NotSaturated(b); T3 Model".into())
}

fn criterion6() -> Outcome {
    let kb = kb("normal_ontology.mknf");
    let a = Approximator::new(Reasoner::new(&kb).unwrap()).map_err(|e| e.to_string())?;
    let (lo, hi) = parse_pair(&kb, &read("normal_ontology.pair")).map_err(|e| e.to_string())?;
    let pair = LatticePair::new(lo, hi);
    ensure(a.is_stable_fixpoint(&pair), || format!("revision gives {}", a.stable_revision(&pair).display(&kb)))?;
    ensure(a.check_model_normal(&pair) == Ok(true), || "side condition fails".into())?;
    Ok("stable fixpoint, side condition satisfied".into())
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut kbs = example_kbs();
    kbs.extend((0..200).map(|_| random_kb(&mut rng, Shape::program(5, 5, 3))));
    let mut checked = 0;
    for kb in &kbs {
        let r = Reasoner::new(kb).unwrap();
        for i in 0..candidate_count(kb) {
            let p = candidate(kb, i);
            if !is_saturated(&r, &p).is_saturated() {
                continue;
            }
            checked += 1;
            let empty = enumerate_headcuts(kb, &p).next().is_none();
            let sat = satisfies_program(kb, &p, DEFAULT_SIG_CAP).map_err(|e| e.to_string())?;
            ensure(empty != sat, || format!("{}\n{}: empty={empty} satisfied={sat}", mknf_core::render_kb(kb), p.display(kb)))?;
        }
    }
    Ok(format!("{} KBs, {checked} saturated partitions, 0 discrepancies", kbs.len()))
}

fn oracle_corpus() -> Vec<KnowledgeBase> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut kbs = all_programs(2, 2);
    kbs.extend((0..500).map(|_| random_kb(&mut rng, Shape::program(6, 6, 3))));
    kbs
}

fn shown(kb: &KnowledgeBase, parts: &[Partition]) -> BTreeSet<String> {
    parts.iter().map(|p| p.display(kb).to_string()).collect()
}

fn criterion8() -> Outcome {
    let kbs = oracle_corpus();
    for kb in &kbs {
        let r = Reasoner::new(kb).unwrap();
        let ours = enumerate_models(&r, 12).map_err(|e| e.to_string())?.models;
        let theirs = partial_stable_bruteforce(kb, 12).map_err(|e| e.to_string())?;
        let (a, b) = (shown(kb, &ours), shown(kb, &theirs));
        ensure(a == b, || format!("{}\nengine {a:?}\noracle {b:?}", mknf_core::render_kb(kb)))?;
    }
    Ok(format!("{} programs, 0 discrepancies", kbs.len()))
}

fn criterion9() -> Outcome {
    let kbs = oracle_corpus();
    for kb in &kbs {
        let r = Reasoner::new(kb).unwrap();
        let order = kb.ka_order();
        let mut ours = BTreeSet::new();
        for bits in 0u32..1 << order.len() {
            let s: AtomSet = order.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &a)| a).collect();
            if check_model(&r, &Partition::total(kb, s.clone()).unwrap()).is_model() {
                ours.insert(kb.display_set(&s));
            }
        }
        let theirs: BTreeSet<String> = two_valued_stable_bruteforce(kb, 12)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|s| kb.display_set(s))
            .collect();
        ensure(ours == theirs, || format!("{}\nengine {ours:?}\noracle {theirs:?}", mknf_core::render_kb(kb)))?;
    }
    Ok(format!("{} programs, 0 discrepancies", kbs.len()))
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut kbs = example_kbs();
    kbs.extend((0..100).map(|_| random_kb(&mut rng, Shape::program(5, 4, 3).with_axioms(3))));
    let mut checked = 0;
    for kb in &kbs {
        let r = Reasoner::new(kb).unwrap();
        for i in 0..candidate_count(kb) {
            let p = candidate(kb, i);
            let c = cross_check(&r, &p, Reading::Covering);
            checked += 1;
            ensure(c.agrees(), || format!("{}\n{}: {c:?}", mknf_core::render_kb(kb), p.display(kb)))?;
        }
    }
    Ok(format!("{} KBs, {checked} partitions, 0 discrepancies", kbs.len()))
}

fn random_subset(rng: &mut impl Rng, of: &AtomSet) -> AtomSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn criterion11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut q_checked = 0;
    while q_checked < 1000 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 3).with_axioms(2));
        let r = Reasoner::new(&kb).unwrap();
        let p = candidate(&kb, rng.gen_range(0..candidate_count(&kb)));
        let Some(cut) = enumerate_headcuts(&kb, &p).next() else { continue };
        let big = random_subset(&mut rng, kb.ka());
        let small = random_subset(&mut rng, &big);
        let ok = q_step(&r, &p, &cut, &small).is_subset(&q_step(&r, &p, &cut, &big));
        ensure(ok, || format!("{}\nq_step not monotone at {}", mknf_core::render_kb(&kb), p.display(&kb)))?;
        q_checked += 1;
    }
    for _ in 0..1000 {
        let kb = random_kb(&mut rng, Shape::program(5, 5, 1).with_axioms(2));
        let a = Approximator::new(Reasoner::new(&kb).unwrap()).map_err(|e| e.to_string())?;
        let u = a.universe().clone();
        let lo2 = random_subset(&mut rng, &u);
        let hi2 = random_subset(&mut rng, &u);
        let lo1 = random_subset(&mut rng, &lo2);
        let hi1 = hi2.union(&random_subset(&mut rng, &u));
        let (p, q) = (LatticePair::new(lo1, hi1), LatticePair::new(lo2, hi2));
        ensure(a.phi(&p).precision_le(&a.phi(&q)), || format!("{}\nphi not monotone", mknf_core::render_kb(&kb)))?;
        ensure(a.stable_revision(&p).precision_le(&a.stable_revision(&q)), || {
            format!("{}\nstable revision not monotone", mknf_core::render_kb(&kb))
        })?;
    }
    Ok("1000 q_step instances, 1000 pair comparisons, 0 violations".into())
}

fn criterion12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mknf");
    let mut files: Vec<PathBuf> = std::fs::read_dir(testdata())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "mknf"))
        .collect();
    files.sort();
    for f in &files {
        let run = |jobs: &str| {
            Command::new(bin)
                .args(["models", "--format", "json", "--jobs", jobs, "--kb"])
                .arg(f)
                .output()
                .map_err(|e| e.to_string())
        };
        let (one, eight) = (run("1")?, run("8")?);
        ensure(one.status.success(), || format!("{}: {}", f.display(), String::from_utf8_lossy(&one.stderr)))?;
        ensure(one.stdout == eight.stdout, || format!("{}: output differs between --jobs 1 and 8", f.display()))?;
    }
    Ok(format!("{} knowledge bases byte-identical", files.len()))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "head-cut sets of the two-rule example", SECOND, criterion1),
        (2, "fixpoints under two ontologies", SECOND, criterion2),
        (3, "model and fixpoint mismatch", SECOND, criterion3),
        (4, "five-rule example head-cuts and model", SECOND, criterion4),
        (5, "saturation and fixpoint verdicts", SECOND, criterion5),
        (6, "normal KB stable fixpoint", SECOND, criterion6),
        (7, "empty cut set iff MKNF evaluation fails", 120 * SECOND, criterion7),
        (8, "model enumeration equals partial stable oracle", 300 * SECOND, criterion8),
        (9, "two-valued models equal GL-reduct oracle", 300 * SECOND, criterion9),
        (10, "stable fixpoints of induced normal KBs vs head-cut check", 600 * SECOND, criterion10),
        (11, "operator monotonicity", 60 * SECOND, criterion11),
        (12, "enumeration output independent of --jobs", 300 * SECOND, criterion12),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}, but took {elapsed:.2?} (limit {limit:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{elapsed:.2?} < {limit:?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} [{elapsed:.2?}]");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
