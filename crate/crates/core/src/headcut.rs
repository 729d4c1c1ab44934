//! Head-cuts: a choice of at most one head atom per rule.
//!
//! For a saturated partition `(T, P)` the admissible cuts are those that
//! contain exactly the rules whose body is not false, minus the rules with an
//! undefined body and a true head atom, and that pick for each such rule a
//! head atom whose value matches the body (true for a true body, undefined
//! otherwise).

use std::collections::BTreeMap;
use std::fmt;

use crate::atoms::{AtomId, AtomSet};
use crate::partition::Partition;
use crate::syntax::{KnowledgeBase, Rule};

/// Map from 1-based rule id to the selected head atom.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HeadCut {
    pairs: BTreeMap<usize, AtomId>,
}

impl HeadCut {
    pub fn new() -> HeadCut {
        HeadCut::default()
    }

    /// Builds a cut, checking that each chosen atom is in its rule's head.
    pub fn from_pairs(kb: &KnowledgeBase, pairs: impl IntoIterator<Item = (usize, AtomId)>) -> Option<HeadCut> {
        let mut cut = HeadCut::new();
        for (rule, head) in pairs {
            if !kb.rule(rule)?.head_set().contains(head) || cut.pairs.insert(rule, head).is_some() {
                return None;
            }
        }
        Some(cut)
    }

    pub fn get(&self, rule: usize) -> Option<AtomId> {
        self.pairs.get(&rule).copied()
    }

    /// Pairs in ascending rule id order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, AtomId)> + '_ {
        self.pairs.iter().map(|(&r, &h)| (r, h))
    }

    pub fn rules(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.keys().copied()
    }

    pub fn heads(&self) -> AtomSet {
        self.pairs.values().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every pair of `self` is also a pair of `other`.
    pub fn is_subset(&self, other: &HeadCut) -> bool {
        self.pairs.iter().all(|(r, h)| other.pairs.get(r) == Some(h))
    }

    /// `{(1, a), (2, x)}`, sorted by rule id.
    pub fn display<'a>(&'a self, kb: &'a KnowledgeBase) -> impl fmt::Display + 'a {
        DisplayCut { kb, cut: self }
    }
}

struct DisplayCut<'a> {
    kb: &'a KnowledgeBase,
    cut: &'a HeadCut,
}

impl fmt::Display for DisplayCut<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (r, h)) in self.cut.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", r, self.kb.name(h))?;
        }
        f.write_str("}")
    }
}

/// Whether every admissible cut must contain `r`.
pub fn rule_required(part: &Partition, r: &Rule) -> bool {
    let (t, p) = (part.t(), part.p());
    r.body_possible_in(t, p) && (r.head_set().is_disjoint(t) || r.body_true_in(t, p))
}

/// Head atoms of `r` that a cut may select: possibly true, and true exactly
/// when the body is true. Returned in head order.
pub fn admissible_heads(part: &Partition, r: &Rule) -> Vec<AtomId> {
    let body_true = r.body_true_in(part.t(), part.p());
    r.head()
        .iter()
        .copied()
        .filter(|&h| part.p().contains(h) && part.t().contains(h) == body_true)
        .collect()
}

/// Odometer over a product of choice lists, first slot most significant.
#[derive(Clone, Debug)]
pub struct HeadCutIter {
    slots: Vec<(usize, Vec<AtomId>)>,
    digits: Vec<usize>,
    done: bool,
}

impl HeadCutIter {
    fn new(slots: Vec<(usize, Vec<AtomId>)>) -> HeadCutIter {
        let done = slots.iter().any(|(_, choices)| choices.is_empty());
        HeadCutIter { digits: vec![0; slots.len()], slots, done }
    }

    /// Number of cuts still to be produced, saturating.
    pub fn total(&self) -> u128 {
        if self.slots.iter().any(|(_, c)| c.is_empty()) {
            return 0;
        }
        self.slots.iter().fold(1u128, |acc, (_, c)| acc.saturating_mul(c.len() as u128))
    }

    /// Rules covered by every cut of this iterator.
    pub fn rules(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().map(|(r, _)| *r)
    }
}

impl Iterator for HeadCutIter {
    type Item = HeadCut;

    fn next(&mut self) -> Option<HeadCut> {
        if self.done {
            return None;
        }
        let cut = HeadCut {
            pairs: self.slots.iter().zip(&self.digits).map(|((r, c), &d)| (*r, c[d])).collect(),
        };
        // advance, last slot fastest
        let mut i = self.slots.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.slots[i].1.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(cut)
    }
}

/// The admissible head-cuts for a saturated partition, in lexicographic order
/// (rule id ascending, head atoms in declaration order).
pub fn enumerate_headcuts(kb: &KnowledgeBase, part: &Partition) -> HeadCutIter {
    HeadCutIter::new(
        kb.rules()
            .iter()
            .filter(|r| rule_required(part, r))
            .map(|r| (r.id(), admissible_heads(part, r)))
            .collect(),
    )
}

/// All cuts covering every rule: the product of the full heads.
pub fn total_headcuts(kb: &KnowledgeBase) -> HeadCutIter {
    HeadCutIter::new(kb.rules().iter().map(|r| (r.id(), r.head().to_vec())).collect())
}

/// The first required rule with no admissible head, if any.
pub fn blocking_rule(kb: &KnowledgeBase, part: &Partition) -> Option<usize> {
    kb.rules()
        .iter()
        .find(|r| rule_required(part, r) && admissible_heads(part, r).is_empty())
        .map(Rule::id)
}
