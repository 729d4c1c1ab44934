//! Objective knowledge `OB(S)` and exact propositional reasoning over it.
//!
//! Two routes decide the same questions. [`TruthTable`] enumerates
//! assignments of a [`Theory`] directly and is the reference.
//! [`CompiledOntology`] enumerates the ontology's models once and answers
//! every `OB(S)` query by filtering them; it is what the engine uses by
//! default. The [`Reasoner`] accepts any [`ObjectiveKnowledge`]
//! implementation, so the reference can be swapped in.

use std::sync::Arc;

use crate::atoms::{AtomId, AtomSet};
use crate::error::EntailmentError;
use crate::syntax::{Formula, KnowledgeBase};

/// Default cap on the number of atoms a truth table may range over.
pub const DEFAULT_SIG_CAP: usize = 16;

/// A finite propositional theory over a fixed signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    formulas: Vec<Formula>,
    signature: Vec<AtomId>,
}

impl Theory {
    /// Builds a theory; the signature is extended with any atom occurring in
    /// `formulas` that it does not already list.
    pub fn new(formulas: Vec<Formula>, signature: Vec<AtomId>) -> Theory {
        let mut signature = signature;
        let mut seen: AtomSet = signature.iter().copied().collect();
        for f in &formulas {
            f.for_each_atom(&mut |&a| {
                if seen.insert(a) {
                    signature.push(a);
                }
            });
        }
        Theory { formulas, signature }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn signature(&self) -> &[AtomId] {
        &self.signature
    }

    pub fn with(&self, f: Formula) -> Theory {
        let mut formulas = self.formulas.clone();
        formulas.push(f);
        Theory::new(formulas, self.signature.clone())
    }

    fn occurring_atoms(&self) -> Vec<AtomId> {
        let mut seen = AtomSet::new();
        let mut out = Vec::new();
        for f in &self.formulas {
            f.for_each_atom(&mut |&a| {
                if seen.insert(a) {
                    out.push(a);
                }
            });
        }
        out
    }
}

/// A total two-valued assignment, stored as its set of true atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub AtomSet);

impl Assignment {
    pub fn value(&self, a: AtomId) -> bool {
        self.0.contains(a)
    }

    pub fn satisfies(&self, f: &Formula) -> bool {
        f.eval(&|a: &AtomId| self.0.contains(*a))
    }
}

/// `OB(S)`: the ontology plus every atom of `s` as a unit formula, over the
/// whole signature of `kb`.
pub fn ob(kb: &KnowledgeBase, s: &AtomSet) -> Result<Theory, EntailmentError> {
    if let Some(a) = s.difference(kb.ka()).iter().next() {
        return Err(EntailmentError::OutsideKa(
            kb.signature().get(a.index()).map_or_else(|| format!("#{}", a.0), |x| x.name().to_owned()),
        ));
    }
    let mut formulas = kb.ontology().to_vec();
    formulas.extend(s.iter().map(Formula::Atom));
    Ok(Theory::new(formulas, (0..kb.signature().len() as u32).map(AtomId).collect()))
}

/// A decision procedure for propositional theories.
pub trait DecisionProcedure {
    fn is_consistent(&self, t: &Theory) -> Result<bool, EntailmentError>;
    fn entails(&self, t: &Theory, a: AtomId) -> Result<bool, EntailmentError>;
    fn all_models(&self, t: &Theory) -> Result<Vec<Assignment>, EntailmentError>;
}

/// Exhaustive assignment enumeration.
///
/// Consistency and entailment only enumerate the atoms that occur in the
/// formulas (plus the queried atom): the remaining signature atoms are
/// unconstrained. `all_models` ranges over the full signature.
#[derive(Clone, Copy, Debug)]
pub struct TruthTable {
    pub cap: usize,
}

impl Default for TruthTable {
    fn default() -> TruthTable {
        TruthTable { cap: DEFAULT_SIG_CAP }
    }
}

impl TruthTable {
    fn check_cap(&self, size: usize) -> Result<(), EntailmentError> {
        if size > self.cap || size > 62 {
            return Err(EntailmentError::SignatureCap { size, cap: self.cap });
        }
        Ok(())
    }

    /// Visits assignments over `atoms` in lexicographic order (first atom most
    /// significant, false before true) until `visit` returns `false`.
    fn enumerate(atoms: &[AtomId], mut visit: impl FnMut(&Assignment) -> bool) {
        let n = atoms.len();
        for bits in 0u64..(1u64 << n) {
            let set = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> (n - 1 - i) & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            if !visit(&Assignment(set)) {
                return;
            }
        }
    }
}

impl DecisionProcedure for TruthTable {
    fn is_consistent(&self, t: &Theory) -> Result<bool, EntailmentError> {
        let atoms = t.occurring_atoms();
        self.check_cap(atoms.len())?;
        let mut found = false;
        TruthTable::enumerate(&atoms, |m| {
            found = t.formulas.iter().all(|f| m.satisfies(f));
            !found
        });
        Ok(found)
    }

    fn entails(&self, t: &Theory, a: AtomId) -> Result<bool, EntailmentError> {
        if !t.signature.contains(&a) {
            return Err(EntailmentError::UnknownAtom(format!("#{}", a.0)));
        }
        Ok(!self.is_consistent(&t.with(Formula::not(Formula::Atom(a))))?)
    }

    fn all_models(&self, t: &Theory) -> Result<Vec<Assignment>, EntailmentError> {
        self.check_cap(t.signature.len())?;
        let mut out = Vec::new();
        TruthTable::enumerate(&t.signature, |m| {
            if t.formulas.iter().all(|f| m.satisfies(f)) {
                out.push(m.clone());
            }
            true
        });
        Ok(out)
    }
}

pub fn is_consistent(t: &Theory) -> Result<bool, EntailmentError> {
    TruthTable::default().is_consistent(t)
}

pub fn entails(t: &Theory, a: AtomId) -> Result<bool, EntailmentError> {
    TruthTable::default().entails(t, a)
}

pub fn all_models(t: &Theory) -> Result<Vec<Assignment>, EntailmentError> {
    TruthTable::default().all_models(t)
}

/// Consistency and entailment of `OB(S)` for a fixed ontology, as `S` varies.
pub trait ObjectiveKnowledge: Send + Sync {
    /// Whether `OB(S)` has a model.
    fn consistent(&self, s: &AtomSet) -> bool;

    /// Whether `OB(S) |= a`. Inconsistent `OB(S)` entails everything.
    fn entails(&self, s: &AtomSet, a: AtomId) -> bool;

    /// `{a in within | OB(S) |= a}`.
    fn consequences(&self, s: &AtomSet, within: &AtomSet) -> AtomSet {
        within.iter().filter(|&a| self.entails(s, a)).collect()
    }
}

/// The ontology's models, enumerated once over the atoms it mentions.
#[derive(Clone, Debug)]
pub struct CompiledOntology {
    atoms: AtomSet,
    models: Vec<AtomSet>,
}

impl CompiledOntology {
    pub fn new(kb: &KnowledgeBase, cap: usize) -> Result<CompiledOntology, EntailmentError> {
        let atoms = kb.ontology_atoms();
        let order: Vec<AtomId> = atoms.iter().collect();
        let table = TruthTable { cap };
        table.check_cap(order.len())?;
        let mut models = Vec::new();
        TruthTable::enumerate(&order, |m| {
            if kb.ontology().iter().all(|f| m.satisfies(f)) {
                models.push(m.0.clone());
            }
            true
        });
        Ok(CompiledOntology { atoms, models })
    }

    fn compatible<'a>(&'a self, s: &AtomSet) -> impl Iterator<Item = &'a AtomSet> + 'a {
        let fixed = s.intersection(&self.atoms);
        self.models.iter().filter(move |m| fixed.is_subset(m))
    }
}

impl ObjectiveKnowledge for CompiledOntology {
    fn consistent(&self, s: &AtomSet) -> bool {
        self.compatible(s).next().is_some()
    }

    fn entails(&self, s: &AtomSet, a: AtomId) -> bool {
        if s.contains(a) {
            return true;
        }
        if !self.atoms.contains(a) {
            return !self.consistent(s);
        }
        self.compatible(s).all(|m| m.contains(a))
    }

    fn consequences(&self, s: &AtomSet, within: &AtomSet) -> AtomSet {
        let mut compatible = self.compatible(s);
        let Some(first) = compatible.next() else {
            return within.clone();
        };
        let mut common = first.clone();
        for m in compatible {
            common.intersect_with(m);
        }
        common.union_with(s);
        common.intersect_with(within);
        common
    }
}

/// Answers `OB(S)` queries by building the theory and handing it to a
/// [`DecisionProcedure`].
pub struct TheoryBacked<D> {
    ontology: Vec<Formula>,
    signature: Vec<AtomId>,
    procedure: D,
}

impl<D: DecisionProcedure> TheoryBacked<D> {
    pub fn new(kb: &KnowledgeBase, procedure: D) -> TheoryBacked<D> {
        TheoryBacked {
            ontology: kb.ontology().to_vec(),
            signature: (0..kb.signature().len() as u32).map(AtomId).collect(),
            procedure,
        }
    }

    fn theory(&self, s: &AtomSet) -> Theory {
        let mut formulas = self.ontology.clone();
        formulas.extend(s.iter().map(Formula::Atom));
        Theory::new(formulas, self.signature.clone())
    }
}

impl<D: DecisionProcedure + Send + Sync> ObjectiveKnowledge for TheoryBacked<D> {
    fn consistent(&self, s: &AtomSet) -> bool {
        self.procedure.is_consistent(&self.theory(s)).expect("theory within the truth-table cap")
    }

    fn entails(&self, s: &AtomSet, a: AtomId) -> bool {
        self.procedure.entails(&self.theory(s), a).expect("theory within the truth-table cap")
    }
}

/// A knowledge base together with a way of deciding its objective knowledge.
#[derive(Clone)]
pub struct Reasoner<'kb> {
    kb: &'kb KnowledgeBase,
    ob: Arc<dyn ObjectiveKnowledge + 'kb>,
}

impl<'kb> Reasoner<'kb> {
    /// Compiles the ontology with the default cap.
    pub fn new(kb: &'kb KnowledgeBase) -> Result<Reasoner<'kb>, EntailmentError> {
        Reasoner::with_cap(kb, DEFAULT_SIG_CAP)
    }

    pub fn with_cap(kb: &'kb KnowledgeBase, cap: usize) -> Result<Reasoner<'kb>, EntailmentError> {
        Ok(Reasoner { kb, ob: Arc::new(CompiledOntology::new(kb, cap)?) })
    }

    pub fn with_procedure(kb: &'kb KnowledgeBase, ob: Arc<dyn ObjectiveKnowledge + 'kb>) -> Reasoner<'kb> {
        Reasoner { kb, ob }
    }

    /// The same objective knowledge attached to another program. The caller
    /// guarantees `kb` has the same ontology and signature.
    pub fn rebind<'b>(&self, kb: &'b KnowledgeBase) -> Reasoner<'b>
    where
        'kb: 'b,
    {
        debug_assert_eq!(kb.ontology(), self.kb.ontology());
        Reasoner { kb, ob: self.ob.clone() }
    }

    pub fn kb(&self) -> &'kb KnowledgeBase {
        self.kb
    }

    pub fn consistent(&self, s: &AtomSet) -> bool {
        self.ob.consistent(s)
    }

    pub fn entails(&self, s: &AtomSet, a: AtomId) -> bool {
        self.ob.entails(s, a)
    }

    /// K-atoms entailed by `OB(S)`.
    pub fn entailed_ka(&self, s: &AtomSet) -> AtomSet {
        self.ob.consequences(s, self.kb.ka())
    }

    pub fn consequences(&self, s: &AtomSet, within: &AtomSet) -> AtomSet {
        self.ob.consequences(s, within)
    }
}
