//! Random knowledge bases for property tests and conformance runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::atoms::Atom;
use crate::syntax::{Formula, KnowledgeBase, RuleSyntax};

/// Shape of a random knowledge base. Each bound is inclusive.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Atoms are drawn from `p0 .. p{atoms-1}`.
    pub atoms: usize,
    pub max_rules: usize,
    pub max_head: usize,
    pub max_pos: usize,
    pub max_neg: usize,
    /// Number of ontology implications, each over at most three atoms.
    pub max_axioms: usize,
}

impl Shape {
    /// A program without ontology.
    pub fn program(atoms: usize, max_rules: usize, max_head: usize) -> Shape {
        Shape { atoms, max_rules, max_head, max_pos: 2, max_neg: 2, max_axioms: 0 }
    }

    pub fn with_axioms(self, max_axioms: usize) -> Shape {
        Shape { max_axioms, ..self }
    }
}

fn atom(i: usize) -> Atom {
    Atom::new(&format!("p{i}")).expect("generated names are valid")
}

fn pick(rng: &mut impl Rng, pool: &[usize], max: usize, min: usize) -> Vec<Atom> {
    let n = rng.gen_range(min..=max.min(pool.len()).max(min));
    pool.choose_multiple(rng, n).map(|&i| atom(i)).collect()
}

/// One implication: a conjunction of one or two atoms implying an atom or a
/// negated atom, over at most three distinct atoms.
fn axiom(rng: &mut impl Rng, pool: &[usize]) -> Formula<Atom> {
    let width = rng.gen_range(2..=3usize.min(pool.len()));
    let chosen: Vec<Atom> = pool.choose_multiple(rng, width).map(|&i| atom(i)).collect();
    let (conclusion, premises) = chosen.split_last().expect("at least two atoms");
    let lhs = premises
        .iter()
        .cloned()
        .map(Formula::Atom)
        .reduce(Formula::and)
        .expect("at least one premise");
    let rhs = if rng.gen_bool(0.3) {
        Formula::not(Formula::Atom(conclusion.clone()))
    } else {
        Formula::Atom(conclusion.clone())
    };
    Formula::implies(lhs, rhs)
}

/// Draws a knowledge base of the given shape. Every rule has a nonempty head.
pub fn random_kb(rng: &mut impl Rng, shape: Shape) -> KnowledgeBase {
    let pool: Vec<usize> = (0..shape.atoms.max(1)).collect();
    let rules = (0..rng.gen_range(0..=shape.max_rules))
        .map(|_| RuleSyntax {
            head: pick(rng, &pool, shape.max_head.max(1), 1),
            body_pos: pick(rng, &pool, shape.max_pos, 0),
            body_neg: pick(rng, &pool, shape.max_neg, 0),
        })
        .collect();
    let ontology = if pool.len() < 2 {
        Vec::new()
    } else {
        (0..rng.gen_range(0..=shape.max_axioms)).map(|_| axiom(rng, &pool)).collect()
    };
    KnowledgeBase::new(ontology, rules).expect("generated rules have distinct atoms per part")
}

/// Every program over `atoms` atoms with at most `max_rules` rules, each rule
/// having a nonempty head and arbitrary positive and negative bodies.
pub fn all_programs(atoms: usize, max_rules: usize) -> Vec<KnowledgeBase> {
    let subsets: Vec<Vec<Atom>> =
        (0u32..1 << atoms).map(|bits| (0..atoms).filter(|i| bits >> i & 1 == 1).map(atom).collect()).collect();
    let mut rules = Vec::new();
    for head in subsets.iter().filter(|s| !s.is_empty()) {
        for pos in &subsets {
            for neg in &subsets {
                rules.push(RuleSyntax { head: head.clone(), body_pos: pos.clone(), body_neg: neg.clone() });
            }
        }
    }
    let mut programs = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_rules {
        let mut next = Vec::new();
        for prog in &frontier {
            for r in &rules {
                let mut p: Vec<RuleSyntax> = prog.clone();
                p.push(r.clone());
                next.push(p);
            }
        }
        programs.extend(next.iter().cloned());
        frontier = next;
    }
    programs
        .into_iter()
        .map(|rules| KnowledgeBase::new(Vec::new(), rules).expect("distinct atoms per part"))
        .collect()
}
