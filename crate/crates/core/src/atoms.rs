//! Ground atoms, their dense identifiers, and bitsets over those identifiers.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

/// A ground propositional atom, compared by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom after checking the name against `[a-z][A-Za-z0-9_]*`.
    /// Reserved words (`not`, `true`, `false`) are rejected.
    pub fn new(name: &str) -> Option<Atom> {
        if is_atom_name(name) {
            Some(Atom(Arc::from(name)))
        } else {
            None
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) const RESERVED: [&str; 3] = ["not", "true", "false"];

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED.contains(&name)
}

/// Index of an atom in the signature of its knowledge base.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomId(pub u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of atom identifiers.
///
/// Trailing zero words are never stored, so structural equality is set
/// equality. Iteration is in ascending identifier order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AtomSet {
    words: SmallVec<[u64; 2]>,
}

impl AtomSet {
    pub fn new() -> AtomSet {
        AtomSet::default()
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn first_n(n: usize) -> AtomSet {
        let mut set = AtomSet::new();
        for i in 0..n {
            set.insert(AtomId(i as u32));
        }
        set
    }

    pub fn singleton(a: AtomId) -> AtomSet {
        let mut set = AtomSet::new();
        set.insert(a);
        set
    }

    #[inline]
    fn locate(a: AtomId) -> (usize, u64) {
        (a.index() / 64, 1u64 << (a.index() % 64))
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Returns `true` if the atom was not already present.
    pub fn insert(&mut self, a: AtomId) -> bool {
        let (w, bit) = Self::locate(a);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, a: AtomId) -> bool {
        let (w, bit) = Self::locate(a);
        match self.words.get_mut(w) {
            Some(word) if *word & bit != 0 => {
                *word &= !bit;
                self.trim();
                true
            }
            _ => false,
        }
    }

    #[inline]
    pub fn contains(&self, a: AtomId) -> bool {
        let (w, bit) = Self::locate(a);
        self.words.get(w).is_some_and(|word| word & bit != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &AtomSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &AtomSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(AtomId(i as u32 * 64 + bit))
            })
        })
    }
}

impl FromIterator<AtomId> for AtomSet {
    fn from_iter<I: IntoIterator<Item = AtomId>>(iter: I) -> AtomSet {
        let mut set = AtomSet::new();
        for a in iter {
            set.insert(a);
        }
        set
    }
}

impl Extend<AtomId> for AtomSet {
    fn extend<I: IntoIterator<Item = AtomId>>(&mut self, iter: I) {
        for a in iter {
            self.insert(a);
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}
