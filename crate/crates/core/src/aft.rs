//! Approximation fixpoint theory for normal knowledge bases.
//!
//! [`Approximator`] implements the three-valued approximator on pairs of K-atom sets,
//! together with the stable revision operator built from its two
//! projections. For a disjunctive knowledge base, [`cross_check`] compares
//! the stable fixpoints of its induced normal knowledge bases with the
//! head-cut characterization.

use std::fmt;

use crate::atoms::AtomSet;
use crate::entailment::Reasoner;
use crate::error::ModelError;
use crate::partition::Partition;
use crate::qfix::{check_model, covers_admissible_cut, induced_normal_kbs};
use crate::syntax::KnowledgeBase;

/// An element of the product bilattice. `lo ⊄ hi` is allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LatticePair {
    pub lo: AtomSet,
    pub hi: AtomSet,
}

impl LatticePair {
    pub fn new(lo: AtomSet, hi: AtomSet) -> LatticePair {
        LatticePair { lo, hi }
    }

    pub fn is_consistent(&self) -> bool {
        self.lo.is_subset(&self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Precision order: `self.lo ⊆ other.lo` and `other.hi ⊆ self.hi`.
    pub fn precision_le(&self, other: &LatticePair) -> bool {
        self.lo.is_subset(&other.lo) && other.hi.is_subset(&self.hi)
    }

    pub fn display<'a>(&'a self, kb: &'a KnowledgeBase) -> impl fmt::Display + 'a {
        DisplayPair { kb, pair: self }
    }
}

impl From<Partition> for LatticePair {
    fn from(part: Partition) -> LatticePair {
        let (lo, hi) = part.into_parts();
        LatticePair { lo, hi }
    }
}

impl From<&Partition> for LatticePair {
    fn from(part: &Partition) -> LatticePair {
        LatticePair { lo: part.t().clone(), hi: part.p().clone() }
    }
}

struct DisplayPair<'a> {
    kb: &'a KnowledgeBase,
    pair: &'a LatticePair,
}

impl fmt::Display for DisplayPair<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kb.display_set(&self.pair.lo), self.kb.display_set(&self.pair.hi))
    }
}

/// The three-valued approximator for one normal knowledge base, over a fixed lattice
/// of K-atoms.
#[derive(Clone)]
pub struct Approximator<'kb> {
    reasoner: Reasoner<'kb>,
    universe: AtomSet,
}

impl<'kb> Approximator<'kb> {
    /// The operator over `KA` of the reasoner's knowledge base.
    pub fn new(reasoner: Reasoner<'kb>) -> Result<Approximator<'kb>, ModelError> {
        let universe = reasoner.kb().ka().clone();
        Approximator::with_universe(reasoner, universe)
    }

    /// The operator over a larger lattice. Used for induced normal knowledge
    /// bases, which may mention fewer K-atoms than the disjunctive original.
    pub fn with_universe(reasoner: Reasoner<'kb>, universe: AtomSet) -> Result<Approximator<'kb>, ModelError> {
        let kb = reasoner.kb();
        if let Some(r) = kb.rules().iter().find(|r| !r.is_normal()) {
            return Err(ModelError::NotNormal(r.id()));
        }
        if let Some(a) = kb.ka().difference(&universe).iter().next() {
            return Err(ModelError::OutsideKa(kb.name(a).to_string()));
        }
        Ok(Approximator { reasoner, universe })
    }

    pub fn universe(&self) -> &AtomSet {
        &self.universe
    }

    pub fn kb(&self) -> &'kb KnowledgeBase {
        self.reasoner.kb()
    }

    /// First component: atoms entailed by `OB(lo)` plus heads of rules whose
    /// body is true with respect to `(lo, hi)`.
    pub fn phi_lo(&self, lo: &AtomSet, hi: &AtomSet) -> AtomSet {
        let mut out = self.reasoner.consequences(lo, &self.universe);
        for r in self.kb().rules() {
            if r.pos_set().is_subset(lo) && r.neg_set().is_disjoint(hi) {
                out.insert(r.head()[0]);
            }
        }
        out
    }

    /// Second component: atoms entailed by `OB(hi)` plus heads of rules whose
    /// body is not false, provided `OB(lo)` does not entail the head's
    /// negation.
    pub fn phi_hi(&self, lo: &AtomSet, hi: &AtomSet) -> AtomSet {
        let mut out = self.reasoner.consequences(hi, &self.universe);
        for r in self.kb().rules() {
            let h = r.head()[0];
            if out.contains(h) || !r.pos_set().is_subset(hi) || !r.neg_set().is_disjoint(lo) {
                continue;
            }
            let mut with_head = lo.clone();
            with_head.insert(h);
            if self.reasoner.consistent(&with_head) {
                out.insert(h);
            }
        }
        out
    }

    pub fn phi(&self, pair: &LatticePair) -> LatticePair {
        LatticePair { lo: self.phi_lo(&pair.lo, &pair.hi), hi: self.phi_hi(&pair.lo, &pair.hi) }
    }

    /// Least fixpoint of `z ↦ phi(z, hi)₁`.
    pub fn lfp_lo(&self, hi: &AtomSet) -> AtomSet {
        kleene(|z| self.phi_lo(z, hi))
    }

    /// Least fixpoint of `z ↦ phi(lo, z)₂`.
    pub fn lfp_hi(&self, lo: &AtomSet) -> AtomSet {
        kleene(|z| self.phi_hi(lo, z))
    }

    pub fn stable_revision(&self, pair: &LatticePair) -> LatticePair {
        LatticePair { lo: self.lfp_lo(&pair.hi), hi: self.lfp_hi(&pair.lo) }
    }

    pub fn is_stable_fixpoint(&self, pair: &LatticePair) -> bool {
        &self.stable_revision(pair) == pair
    }

    /// The precision-least stable fixpoint, by iterating stable revision from
    /// `(∅, universe)`.
    pub fn well_founded(&self) -> LatticePair {
        let mut pair = LatticePair::new(AtomSet::new(), self.universe.clone());
        loop {
            let next = self.stable_revision(&pair);
            if next == pair {
                return pair;
            }
            debug_assert!(pair.precision_le(&next));
            pair = next;
        }
    }

    /// Whether `(T, P)` is a stable fixpoint whose knowledge, with every
    /// non-true atom false, is satisfiable.
    pub fn check_model_normal(&self, pair: &LatticePair) -> Result<bool, ModelError> {
        if !pair.is_consistent() {
            return Err(ModelError::InconsistentPair);
        }
        Ok(self.is_stable_fixpoint(pair) && self.reasoner.consistent(&self.lfp_lo(&pair.lo)))
    }
}

/// Least fixpoint of a monotone set operator, iterating from the empty set.
fn kleene(mut f: impl FnMut(&AtomSet) -> AtomSet) -> AtomSet {
    let mut z = AtomSet::new();
    loop {
        let next = f(&z);
        if next == z {
            return z;
        }
        z = next;
    }
}

/// Which induced normal knowledge bases the stable-fixpoint side quantifies
/// over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reading {
    /// Every induced normal knowledge base.
    Every,
    /// Every induced normal knowledge base that contains an admissible
    /// head-cut of the partition, of which there must be at least one.
    Covering,
}

/// Both sides of the comparison between the two characterizations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossCheck {
    /// Stable-fixpoint side, over induced normal knowledge bases.
    pub aft: bool,
    /// Saturated, nonempty admissible cut set, and every fixpoint equals `P`.
    pub headcut: bool,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.aft == self.headcut
    }
}

/// Evaluates both characterizations of `part` for the reasoner's
/// (disjunctive) knowledge base.
///
/// The lattice for each induced normal knowledge base is `KA` of the
/// original, so that `part` is an element of it.
pub fn cross_check(reasoner: &Reasoner<'_>, part: &Partition, reading: Reading) -> CrossCheck {
    let kb = reasoner.kb();
    let pair = LatticePair::from(part);
    let mut relevant = 0usize;
    let mut aft = true;
    for normal in induced_normal_kbs(kb) {
        if reading == Reading::Covering && !covers_admissible_cut(kb, part, &normal) {
            continue;
        }
        relevant += 1;
        let approx = Approximator::with_universe(reasoner.rebind(&normal.kb), kb.ka().clone())
            .expect("induced knowledge bases are normal and mention only K-atoms of the original");
        if !approx.check_model_normal(&pair).expect("partitions are consistent pairs") {
            aft = false;
            break;
        }
    }
    if reading == Reading::Covering && relevant == 0 {
        aft = false;
    }
    CrossCheck { aft, headcut: check_model(reasoner, part).is_model() }
}
