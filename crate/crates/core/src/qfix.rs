//! The per-cut derivation operator, its least fixpoint, and model checking.
//!
//! A saturated partition `(T, P)` is induced by a three-valued MKNF model iff
//! its admissible head-cut set is nonempty and, for every admissible cut, the
//! least fixpoint of the derivation operator is exactly `P`.

use rayon::prelude::*;

use crate::atoms::AtomSet;
use crate::entailment::Reasoner;
use crate::error::ModelError;
use crate::headcut::{admissible_heads, blocking_rule, enumerate_headcuts, rule_required, total_headcuts, HeadCut};
use crate::partition::{is_saturated, Partition, SaturationViolation};
use crate::syntax::KnowledgeBase;
use crate::truth::TruthValue;

/// Default cap on |KA| for exhaustive partition enumeration.
pub const DEFAULT_KA_CAP: usize = 12;

/// One application of the operator for cut `cut` to `s`:
///
/// * the head chosen for `r` once `body⁺(r) ⊆ s`;
/// * true atoms entailed by `OB(s ∩ T)`;
/// * undefined atoms entailed by `OB(s)`.
pub fn q_step(reasoner: &Reasoner<'_>, part: &Partition, cut: &HeadCut, s: &AtomSet) -> AtomSet {
    let kb = reasoner.kb();
    let mut out: AtomSet = cut
        .pairs()
        .filter(|&(r, _)| kb.rule(r).is_some_and(|rule| rule.pos_set().is_subset(s)))
        .map(|(_, h)| h)
        .collect();
    out.union_with(&reasoner.consequences(&s.intersection(part.t()), part.t()));
    out.union_with(&reasoner.consequences(s, &part.undefined()));
    out
}

/// Least fixpoint of [`q_step`] by round-based iteration from the empty set.
pub fn lfp_q(reasoner: &Reasoner<'_>, part: &Partition, cut: &HeadCut) -> AtomSet {
    lfp_q_rounds(reasoner, part, cut).pop().unwrap_or_default()
}

/// Every iterate `Q⁰(∅) = ∅, Q¹(∅), ...` up to and including the fixpoint.
pub fn lfp_q_rounds(reasoner: &Reasoner<'_>, part: &Partition, cut: &HeadCut) -> Vec<AtomSet> {
    let mut rounds = vec![AtomSet::new()];
    loop {
        let last = rounds.last().expect("nonempty");
        let next = q_step(reasoner, part, cut, last);
        if &next == last {
            return rounds;
        }
        debug_assert!(last.is_subset(&next), "operator must be inflationary from the empty set");
        rounds.push(next);
    }
}

/// True atoms whose first derivation fired a rule whose positive body is not
/// entirely true. Admissible cuts only select a true head for a rule with a
/// true body, so this is expected to be empty; it exists to surface any
/// counterexample for inspection.
pub fn true_atoms_from_undefined(reasoner: &Reasoner<'_>, part: &Partition, cut: &HeadCut) -> AtomSet {
    let kb = reasoner.kb();
    let rounds = lfp_q_rounds(reasoner, part, cut);
    let mut flagged = AtomSet::new();
    for w in rounds.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        for h in next.difference(prev).intersection(part.t()).iter() {
            let via_ontology = reasoner.entails(&prev.intersection(part.t()), h);
            let via_true_body = cut.pairs().any(|(r, head)| {
                head == h
                    && kb.rule(r).is_some_and(|rule| {
                        rule.pos_set().is_subset(prev) && rule.pos_set().is_subset(part.t())
                    })
            });
            if !via_ontology && !via_true_body {
                flagged.insert(h);
            }
        }
    }
    flagged
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Model,
    NotSaturated,
    EmptyH,
    FixpointMismatch,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Saturation(SaturationViolation),
    /// A required rule with no admissible head atom.
    BlockingRule(usize),
    /// A cut whose least fixpoint differs from `P`.
    Fixpoint { cut: HeadCut, lfp: AtomSet },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckVerdict {
    pub status: CheckStatus,
    pub witness: Option<Witness>,
    /// Cuts whose fixpoint was computed.
    pub cuts_checked: usize,
}

impl CheckVerdict {
    pub fn is_model(&self) -> bool {
        self.status == CheckStatus::Model
    }
}

/// Decides whether `part` is induced by a three-valued MKNF model.
///
/// Conditions are evaluated in order (saturation, nonempty cut set, per-cut
/// fixpoint) and the first failure is returned with its witness. Partitions
/// are never saturated implicitly.
pub fn check_model(reasoner: &Reasoner<'_>, part: &Partition) -> CheckVerdict {
    let kb = reasoner.kb();
    if let Some(v) = is_saturated(reasoner, part).violation {
        return CheckVerdict { status: CheckStatus::NotSaturated, witness: Some(Witness::Saturation(v)), cuts_checked: 0 };
    }
    if let Some(rule) = blocking_rule(kb, part) {
        return CheckVerdict { status: CheckStatus::EmptyH, witness: Some(Witness::BlockingRule(rule)), cuts_checked: 0 };
    }
    let mut cuts_checked = 0;
    for cut in enumerate_headcuts(kb, part) {
        cuts_checked += 1;
        let lfp = lfp_q(reasoner, part, &cut);
        debug_assert!(lfp.is_subset(part.p()));
        if &lfp != part.p() {
            return CheckVerdict {
                status: CheckStatus::FixpointMismatch,
                witness: Some(Witness::Fixpoint { cut, lfp }),
                cuts_checked,
            };
        }
        assert!(part.t().is_subset(&lfp), "true atoms must be rederived by every admissible cut");
    }
    CheckVerdict { status: CheckStatus::Model, witness: None, cuts_checked }
}

/// Number of partitions of KA: `3^|KA|`.
pub fn candidate_count(kb: &KnowledgeBase) -> u64 {
    3u64.saturating_pow(kb.ka().len() as u32)
}

/// The `index`-th candidate partition in base-3 counter order: the first
/// K-atom is the most significant digit, and digits run false, undefined,
/// true.
pub fn candidate(kb: &KnowledgeBase, index: u64) -> Partition {
    let order = kb.ka_order();
    let n = order.len();
    let mut digits = vec![0u8; n];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % 3) as u8;
        rest /= 3;
    }
    let mut value = vec![TruthValue::False; kb.signature().len()];
    for (pos, &a) in order.iter().enumerate() {
        value[a.index()] = [TruthValue::False, TruthValue::Undefined, TruthValue::True][digits[pos] as usize];
    }
    Partition::from_values(kb, |a| value[a.index()])
}

pub fn check_ka_cap(kb: &KnowledgeBase, cap: usize) -> Result<(), ModelError> {
    let size = kb.ka().len();
    if size > cap {
        return Err(ModelError::KaCap { size, cap });
    }
    Ok(())
}

/// Models found by exhaustive enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelSet {
    pub models: Vec<Partition>,
    pub candidates_checked: u64,
}

/// Every partition of KA that [`check_model`] accepts, in candidate order.
/// Candidates are checked in parallel on the current rayon pool; the result
/// does not depend on the pool size.
pub fn enumerate_models(reasoner: &Reasoner<'_>, ka_cap: usize) -> Result<ModelSet, ModelError> {
    let kb = reasoner.kb();
    check_ka_cap(kb, ka_cap)?;
    let total = candidate_count(kb);
    let models = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let part = candidate(kb, i);
            check_model(reasoner, &part).is_model().then_some(part)
        })
        .collect();
    Ok(ModelSet { models, candidates_checked: total })
}

/// A normal knowledge base obtained by keeping one head atom per rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedNormal {
    pub cut: HeadCut,
    pub kb: KnowledgeBase,
}

/// One induced normal knowledge base per total head-cut, in cut order. Each
/// shares the signature (and ontology) of `kb`.
pub fn induced_normal_kbs(kb: &KnowledgeBase) -> impl Iterator<Item = InducedNormal> + '_ {
    total_headcuts(kb).map(move |cut| {
        let normal = kb.with_single_heads(|r| cut.get(r.id()).expect("total cut covers every rule"));
        InducedNormal { cut, kb: normal }
    })
}

/// Whether some admissible cut of `part` is contained in the induced normal
/// program. Admissible cuts share their rule set and are a product of
/// per-rule choices, so this reduces to a per-rule test.
pub fn covers_admissible_cut(kb: &KnowledgeBase, part: &Partition, normal: &InducedNormal) -> bool {
    kb.rules().iter().filter(|r| rule_required(part, r)).all(|r| {
        normal.cut.get(r.id()).is_some_and(|h| admissible_heads(part, r).contains(&h))
    })
}
