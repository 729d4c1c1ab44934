//! Brute-force semantic oracles, independent of the head-cut engine.
//!
//! * [`eval_mknf`] evaluates MKNF formulas in a three-valued MKNF structure
//!   and [`satisfies_program`] checks the knowledge base in the canonical
//!   interpretation pair of a partition.
//! * [`partial_stable_bruteforce`] enumerates partial stable models of a
//!   disjunctive program (empty ontology) by reduct and minimality check.
//! * [`two_valued_stable_bruteforce`] enumerates stable models via the
//!   Gelfond-Lifschitz reduct.
//!
//! None of these use [`crate::entailment::Reasoner`]; objective knowledge is
//! evaluated with a plain truth table.

use crate::atoms::{AtomId, AtomSet};
use crate::entailment::{ob, Assignment, DecisionProcedure, TruthTable};
use crate::error::ModelError;
use crate::partition::Partition;
use crate::syntax::{Formula, KnowledgeBase, Rule};
use crate::truth::TruthValue;

/// A set of two-valued interpretations, each given by its true atoms.
pub type InterpSet = Vec<AtomSet>;

/// Ground MKNF formulas.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mknf {
    /// An objective formula, evaluated classically in `I`.
    Objective(Formula),
    Neg(Box<Mknf>),
    And(Vec<Mknf>),
    Or(Vec<Mknf>),
    /// `head ⊂ body`.
    If { head: Box<Mknf>, body: Box<Mknf> },
    K(Box<Mknf>),
    NotM(Box<Mknf>),
}

impl Mknf {
    pub fn k_atom(a: AtomId) -> Mknf {
        Mknf::K(Box::new(Mknf::Objective(Formula::Atom(a))))
    }

    pub fn not_atom(a: AtomId) -> Mknf {
        Mknf::NotM(Box::new(Mknf::Objective(Formula::Atom(a))))
    }

    fn is_modal(&self) -> bool {
        match self {
            Mknf::Objective(_) => false,
            Mknf::K(_) | Mknf::NotM(_) => true,
            Mknf::Neg(f) => f.is_modal(),
            Mknf::And(fs) | Mknf::Or(fs) => fs.iter().any(Mknf::is_modal),
            Mknf::If { head, body } => head.is_modal() || body.is_modal(),
        }
    }
}

/// The formula of a rule: the disjunction of its K-heads if the conjunction
/// of its K-body and not-body.
pub fn rule_formula(r: &Rule) -> Mknf {
    let head = Mknf::Or(r.head().iter().map(|&h| Mknf::k_atom(h)).collect());
    let body = Mknf::And(
        r.body_pos()
            .iter()
            .map(|&a| Mknf::k_atom(a))
            .chain(r.body_neg().iter().map(|&a| Mknf::not_atom(a)))
            .collect(),
    );
    Mknf::If { head: Box::new(head), body: Box::new(body) }
}

/// The whole knowledge base: every rule formula and `K` of the ontology.
pub fn kb_formula(kb: &KnowledgeBase) -> Mknf {
    let mut parts: Vec<Mknf> = kb.rules().iter().map(rule_formula).collect();
    let ontology = Mknf::And(kb.ontology().iter().cloned().map(Mknf::Objective).collect());
    parts.push(Mknf::K(Box::new(ontology)));
    Mknf::And(parts)
}

/// Evaluates `f` in the structure `(I, <M, N>, <M, N>)`.
pub fn eval_mknf(m: &[AtomSet], n: &[AtomSet], i: &AtomSet, f: &Mknf) -> Result<TruthValue, ModelError> {
    let structure = Structure { k: (m, n), not: (m, n) };
    structure.eval(i, f, false)
}

/// A three-valued MKNF structure without its interpretation `I`. The first
/// pair is used by `K`, the second by `not`.
#[derive(Clone, Copy)]
pub struct Structure<'a> {
    pub k: (&'a [AtomSet], &'a [AtomSet]),
    pub not: (&'a [AtomSet], &'a [AtomSet]),
}

impl Structure<'_> {
    pub fn eval(&self, i: &AtomSet, f: &Mknf, in_modal: bool) -> Result<TruthValue, ModelError> {
        use TruthValue::*;
        Ok(match f {
            Mknf::Objective(g) => TruthValue::from_bool(g.eval(&|a: &AtomId| i.contains(*a))),
            Mknf::Neg(g) => self.eval(i, g, in_modal)?.negate(),
            Mknf::And(gs) => {
                let mut v = True;
                for g in gs {
                    v = v.min(self.eval(i, g, in_modal)?);
                }
                v
            }
            Mknf::Or(gs) => {
                let mut v = False;
                for g in gs {
                    v = v.max(self.eval(i, g, in_modal)?);
                }
                v
            }
            Mknf::If { head, body } => {
                TruthValue::from_bool(self.eval(i, head, in_modal)? >= self.eval(i, body, in_modal)?)
            }
            Mknf::K(g) => {
                if in_modal || g.is_modal() {
                    return Err(ModelError::NestedModal);
                }
                let (all, some) = self.k;
                if all.iter().all(|j| self.eval(j, g, true) == Ok(True)) {
                    True
                } else if some.iter().any(|j| self.eval(j, g, true) == Ok(False)) {
                    False
                } else {
                    Undefined
                }
            }
            Mknf::NotM(g) => {
                if in_modal || g.is_modal() {
                    return Err(ModelError::NestedModal);
                }
                let (all, some) = self.not;
                if some.iter().any(|j| self.eval(j, g, true) == Ok(False)) {
                    True
                } else if all.iter().all(|j| self.eval(j, g, true) == Ok(True)) {
                    False
                } else {
                    Undefined
                }
            }
        })
    }
}

/// `({I | I |= OB(T)}, {I | I |= OB(P)})` over the full signature.
pub fn canonical_pair(kb: &KnowledgeBase, part: &Partition, cap: usize) -> Result<(InterpSet, InterpSet), ModelError> {
    let table = TruthTable { cap };
    let models = |s: &AtomSet| -> Result<InterpSet, ModelError> {
        Ok(table.all_models(&ob(kb, s)?)?.into_iter().map(|Assignment(a)| a).collect())
    };
    Ok((models(part.t())?, models(part.p())?))
}

/// Whether every `I` in `M` evaluates the knowledge base to true, where
/// `(M, N)` is the canonical pair of `part`.
pub fn satisfies_program(kb: &KnowledgeBase, part: &Partition, cap: usize) -> Result<bool, ModelError> {
    let (m, n) = canonical_pair(kb, part, cap)?;
    let f = kb_formula(kb);
    for i in &m {
        if eval_mknf(&m, &n, i, &f)? != TruthValue::True {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_program(kb: &KnowledgeBase, ka_cap: usize) -> Result<(), ModelError> {
    if !kb.ontology().is_empty() {
        return Err(ModelError::NonEmptyOntology);
    }
    let size = kb.ka().len();
    if size > ka_cap {
        return Err(ModelError::KaCap { size, cap: ka_cap });
    }
    Ok(())
}

/// Three-valued interpretation over KA: `value[a]` for each atom id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeValuedInterp {
    pub value: Vec<TruthValue>,
}

impl ThreeValuedInterp {
    fn of(kb: &KnowledgeBase, part: &Partition) -> ThreeValuedInterp {
        ThreeValuedInterp { value: (0..kb.signature().len() as u32).map(|i| part.value(AtomId(i))).collect() }
    }

    fn get(&self, a: AtomId) -> TruthValue {
        self.value[a.index()]
    }
}

/// All ways of assigning values from `options(a)` to `atoms`, in counter
/// order with the first atom most significant.
fn assignments(
    atoms: &[AtomId],
    width: usize,
    mut options: impl FnMut(AtomId) -> Vec<TruthValue>,
) -> Vec<ThreeValuedInterp> {
    let mut out = vec![ThreeValuedInterp { value: vec![TruthValue::False; width] }];
    for &a in atoms {
        let opts = options(a);
        out = out
            .into_iter()
            .flat_map(|interp| {
                opts.iter().map(move |&v| {
                    let mut next = interp.clone();
                    next.value[a.index()] = v;
                    next
                })
            })
            .collect();
    }
    out
}

/// Whether `j` is a model of the reduct of the program by `i`: every rule's
/// maximal head value is at least its body value, with each negative literal
/// replaced by the constant `¬i(c)`.
fn models_reduct(kb: &KnowledgeBase, i: &ThreeValuedInterp, j: &ThreeValuedInterp) -> bool {
    kb.rules().iter().all(|r| {
        let head = r.head().iter().map(|&h| j.get(h)).max().unwrap_or(TruthValue::False);
        let body = r
            .body_pos()
            .iter()
            .map(|&a| j.get(a))
            .chain(r.body_neg().iter().map(|&c| i.get(c).negate()))
            .min()
            .unwrap_or(TruthValue::True);
        head >= body
    })
}

/// Every partial stable model, in base-3 counter order over KA (first K-atom
/// most significant, false before undefined before true).
pub fn partial_stable_bruteforce(kb: &KnowledgeBase, ka_cap: usize) -> Result<Vec<Partition>, ModelError> {
    use TruthValue::*;
    require_program(kb, ka_cap)?;
    let order = kb.ka_order();
    let width = kb.signature().len();
    let mut out = Vec::new();
    for i in assignments(order, width, |_| vec![False, Undefined, True]) {
        if !models_reduct(kb, &i, &i) {
            continue;
        }
        let below = assignments(order, width, |a| match i.get(a) {
            False => vec![False],
            Undefined => vec![False, Undefined],
            True => vec![False, Undefined, True],
        });
        let minimal = below.iter().all(|j| j == &i || !models_reduct(kb, &i, j));
        if minimal {
            out.push(Partition::from_values(kb, |a| i.get(a)));
        }
    }
    Ok(out)
}

/// Every two-valued stable model, in binary counter order over KA.
pub fn two_valued_stable_bruteforce(kb: &KnowledgeBase, ka_cap: usize) -> Result<Vec<AtomSet>, ModelError> {
    require_program(kb, ka_cap)?;
    let order = kb.ka_order();
    let subsets_of = |within: &AtomSet| -> Vec<AtomSet> {
        let atoms: Vec<AtomId> = order.iter().copied().filter(|&a| within.contains(a)).collect();
        let n = atoms.len();
        (0u64..1 << n)
            .map(|bits| atoms.iter().enumerate().filter(|(k, _)| bits >> (n - 1 - k) & 1 == 1).map(|(_, &a)| a).collect())
            .collect()
    };
    let mut out = Vec::new();
    for s in subsets_of(kb.ka()) {
        let reduct: Vec<&Rule> = kb.rules().iter().filter(|r| r.neg_set().is_disjoint(&s)).collect();
        let is_model = |x: &AtomSet| reduct.iter().all(|r| !r.pos_set().is_subset(x) || !r.head_set().is_disjoint(x));
        if is_model(&s) && subsets_of(&s).iter().all(|x| x == &s || !is_model(x)) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Convenience view of a partition as a three-valued interpretation.
pub fn interp_of(kb: &KnowledgeBase, part: &Partition) -> ThreeValuedInterp {
    ThreeValuedInterp::of(kb, part)
}
