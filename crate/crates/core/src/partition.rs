//! Partial partitions `(T, P)` of the K-atoms and the saturation test.

use std::fmt;

use crate::atoms::{AtomId, AtomSet};
use crate::entailment::Reasoner;
use crate::error::ModelError;
use crate::syntax::{KnowledgeBase, Rule};
use crate::truth::TruthValue;

/// A pair `T ⊆ P ⊆ KA`: atoms in `T` are true, atoms in `P \ T` undefined,
/// the rest of KA false.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    t: AtomSet,
    p: AtomSet,
}

impl Partition {
    pub fn new(kb: &KnowledgeBase, t: AtomSet, p: AtomSet) -> Result<Partition, ModelError> {
        if let Some(a) = p.difference(kb.ka()).iter().next() {
            return Err(ModelError::OutsideKa(kb.name(a).to_owned()));
        }
        if !t.is_subset(&p) {
            return Err(ModelError::NotContained);
        }
        Ok(Partition { t, p })
    }

    /// Builds a partition from a per-atom valuation of KA.
    pub fn from_values(kb: &KnowledgeBase, mut value: impl FnMut(AtomId) -> TruthValue) -> Partition {
        let mut t = AtomSet::new();
        let mut p = AtomSet::new();
        for a in kb.ka().iter() {
            match value(a) {
                TruthValue::True => {
                    t.insert(a);
                    p.insert(a);
                }
                TruthValue::Undefined => {
                    p.insert(a);
                }
                TruthValue::False => {}
            }
        }
        Partition { t, p }
    }

    /// Two-valued partition `(S, S)`.
    pub fn total(kb: &KnowledgeBase, s: AtomSet) -> Result<Partition, ModelError> {
        Partition::new(kb, s.clone(), s)
    }

    pub fn t(&self) -> &AtomSet {
        &self.t
    }

    pub fn p(&self) -> &AtomSet {
        &self.p
    }

    pub fn into_parts(self) -> (AtomSet, AtomSet) {
        (self.t, self.p)
    }

    pub fn is_two_valued(&self) -> bool {
        self.t == self.p
    }

    /// Value of an atom assumed to be in KA.
    #[inline]
    pub fn value(&self, a: AtomId) -> TruthValue {
        if self.t.contains(a) {
            TruthValue::True
        } else if self.p.contains(a) {
            TruthValue::Undefined
        } else {
            TruthValue::False
        }
    }

    pub fn undefined(&self) -> AtomSet {
        self.p.difference(&self.t)
    }

    pub fn display<'a>(&'a self, kb: &'a KnowledgeBase) -> impl fmt::Display + 'a {
        DisplayPartition { kb, part: self }
    }
}

struct DisplayPartition<'a> {
    kb: &'a KnowledgeBase,
    part: &'a Partition,
}

impl fmt::Display for DisplayPartition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &AtomSet| self.kb.names(s).collect::<Vec<_>>().join(", ");
        write!(f, "T: {}. P: {}.", list(&self.part.t), list(&self.part.p))
    }
}

pub fn atom_value(kb: &KnowledgeBase, part: &Partition, a: AtomId) -> Result<TruthValue, ModelError> {
    if !kb.ka().contains(a) {
        return Err(ModelError::OutsideKa(
            kb.signature().get(a.index()).map_or_else(|| format!("#{}", a.0), |x| x.name().to_owned()),
        ));
    }
    Ok(part.value(a))
}

/// Minimum over the positive body values and the negated negative body
/// values; an empty body is true.
pub fn body_value(part: &Partition, r: &Rule) -> TruthValue {
    r.body_pos()
        .iter()
        .map(|&a| part.value(a))
        .chain(r.body_neg().iter().map(|&a| part.value(a).negate()))
        .min()
        .unwrap_or(TruthValue::True)
}

/// Which saturation condition failed first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SaturationViolation {
    /// Clause 1: `OB(P)` is inconsistent.
    InconsistentP,
    /// Clause 2: `OB(T)` entails a K-atom outside `T`.
    EntailedOutsideT(AtomId),
    /// Clause 3: `OB(P)` entails a K-atom outside `P`.
    EntailedOutsideP(AtomId),
}

impl SaturationViolation {
    pub fn clause(self) -> u8 {
        match self {
            SaturationViolation::InconsistentP => 1,
            SaturationViolation::EntailedOutsideT(_) => 2,
            SaturationViolation::EntailedOutsideP(_) => 3,
        }
    }

    pub fn witness(self) -> Option<AtomId> {
        match self {
            SaturationViolation::InconsistentP => None,
            SaturationViolation::EntailedOutsideT(a) | SaturationViolation::EntailedOutsideP(a) => Some(a),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SaturationReport {
    pub violation: Option<SaturationViolation>,
}

impl SaturationReport {
    pub fn is_saturated(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn is_saturated(reasoner: &Reasoner<'_>, part: &Partition) -> SaturationReport {
    let kb = reasoner.kb();
    let violation = if !reasoner.consistent(&part.p) {
        Some(SaturationViolation::InconsistentP)
    } else if let Some(a) = reasoner.entailed_ka(&part.t).difference(&part.t).iter().next() {
        Some(SaturationViolation::EntailedOutsideT(a))
    } else {
        reasoner
            .entailed_ka(&part.p)
            .difference(&part.p)
            .iter()
            .next()
            .map(SaturationViolation::EntailedOutsideP)
    };
    debug_assert!(part.p.is_subset(kb.ka()));
    SaturationReport { violation }
}

/// `saturate` could not produce a partition because `OB(P)` became
/// inconsistent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SaturationFailure {
    pub last: Partition,
}

/// Least entailment closure: add to `T` what `OB(T)` entails and to `P` what
/// `OB(P)` entails until nothing changes.
pub fn saturate(reasoner: &Reasoner<'_>, part: &Partition) -> Result<Partition, SaturationFailure> {
    let mut t = part.t.clone();
    let mut p = part.p.clone();
    loop {
        if !reasoner.consistent(&p) {
            return Err(SaturationFailure { last: Partition { t, p } });
        }
        let t_next = reasoner.entailed_ka(&t).union(&t);
        let mut p_next = reasoner.entailed_ka(&p).union(&p);
        p_next.union_with(&t_next);
        if t_next == t && p_next == p {
            return Ok(Partition { t, p });
        }
        t = t_next;
        p = p_next;
    }
}
