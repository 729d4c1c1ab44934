//! Knowledge bases: propositional ontology formulas plus ground disjunctive
//! MKNF rules.
//!
//! Atoms are interned on construction. The K-atoms of the program (those
//! occurring in some rule) receive the lowest identifiers, in order of first
//! occurrence; atoms that only occur in the ontology follow.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::atoms::{Atom, AtomId, AtomSet};
use crate::error::KbError;

/// Propositional formula over atoms of type `A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula<A = AtomId> {
    True,
    False,
    Atom(A),
    Not(Box<Formula<A>>),
    And(Box<Formula<A>>, Box<Formula<A>>),
    Or(Box<Formula<A>>, Box<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
    Iff(Box<Formula<A>>, Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn atom(a: A) -> Formula<A> {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<A>) -> Formula<A> {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula<A>, r: Formula<A>) -> Formula<A> {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula<A>, r: Formula<A>) -> Formula<A> {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula<A>, r: Formula<A>) -> Formula<A> {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula<A>, r: Formula<A>) -> Formula<A> {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Classical two-valued evaluation.
    pub fn eval(&self, value: &impl Fn(&A) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Implies(l, r) => !l.eval(value) || r.eval(value),
            Formula::Iff(l, r) => l.eval(value) == r.eval(value),
        }
    }

    /// Visits every atom occurrence, left to right.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.for_each_atom(f),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Formula<B> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(f(a)),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(l, r) => Formula::and(l.map_atoms(f), r.map_atoms(f)),
            Formula::Or(l, r) => Formula::or(l.map_atoms(f), r.map_atoms(f)),
            Formula::Implies(l, r) => Formula::implies(l.map_atoms(f), r.map_atoms(f)),
            Formula::Iff(l, r) => Formula::iff(l.map_atoms(f), r.map_atoms(f)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            _ => 6,
        }
    }

    /// Writes the formula with the minimal parentheses needed to parse back
    /// to the same tree. `&`, `|` and `<->` associate to the left, `->` to
    /// the right.
    pub(crate) fn write_with(
        &self,
        out: &mut impl fmt::Write,
        name: &impl Fn(&A) -> String,
    ) -> fmt::Result {
        match self {
            Formula::True => out.write_str("true"),
            Formula::False => out.write_str("false"),
            Formula::Atom(a) => out.write_str(&name(a)),
            Formula::Not(g) => {
                out.write_char('~')?;
                g.write_operand(out, name, g.precedence() < 5)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Iff(l, r) => {
                let prec = self.precedence();
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " <-> ",
                };
                l.write_operand(out, name, l.precedence() < prec)?;
                out.write_str(op)?;
                r.write_operand(out, name, r.precedence() <= prec)
            }
            Formula::Implies(l, r) => {
                l.write_operand(out, name, l.precedence() <= 2)?;
                out.write_str(" -> ")?;
                r.write_operand(out, name, r.precedence() < 2)
            }
        }
    }

    fn write_operand(
        &self,
        out: &mut impl fmt::Write,
        name: &impl Fn(&A) -> String,
        parens: bool,
    ) -> fmt::Result {
        if parens {
            out.write_char('(')?;
            self.write_with(out, name)?;
            out.write_char(')')
        } else {
            self.write_with(out, name)
        }
    }
}

impl fmt::Display for Formula<Atom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &|a: &Atom| a.name().to_owned())
    }
}

/// A rule as written in source: atoms by name, no identifiers yet.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RuleSyntax {
    pub head: Vec<Atom>,
    pub body_pos: Vec<Atom>,
    pub body_neg: Vec<Atom>,
}

impl RuleSyntax {
    /// Convenience constructor from atom names. Panics on invalid names;
    /// intended for tests and programmatic construction.
    pub fn from_names(head: &[&str], body_pos: &[&str], body_neg: &[&str]) -> RuleSyntax {
        let conv = |names: &[&str]| {
            names
                .iter()
                .map(|n| Atom::new(n).unwrap_or_else(|| panic!("invalid atom name {n:?}")))
                .collect()
        };
        RuleSyntax { head: conv(head), body_pos: conv(body_pos), body_neg: conv(body_neg) }
    }
}

/// A ground rule `h1 ; ... ; hn :- p1, ..., pm, not n1, ..., not nk`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    id: usize,
    head: Vec<AtomId>,
    body_pos: Vec<AtomId>,
    body_neg: Vec<AtomId>,
    head_set: AtomSet,
    pos_set: AtomSet,
    neg_set: AtomSet,
}

impl Rule {
    fn new(id: usize, head: Vec<AtomId>, body_pos: Vec<AtomId>, body_neg: Vec<AtomId>) -> Rule {
        Rule {
            id,
            head_set: head.iter().copied().collect(),
            pos_set: body_pos.iter().copied().collect(),
            neg_set: body_neg.iter().copied().collect(),
            head,
            body_pos,
            body_neg,
        }
    }

    /// 1-based position in the program.
    pub fn id(&self) -> usize {
        self.id
    }

    /// Head atoms in declaration order.
    pub fn head(&self) -> &[AtomId] {
        &self.head
    }

    pub fn body_pos(&self) -> &[AtomId] {
        &self.body_pos
    }

    pub fn body_neg(&self) -> &[AtomId] {
        &self.body_neg
    }

    pub fn head_set(&self) -> &AtomSet {
        &self.head_set
    }

    pub fn pos_set(&self) -> &AtomSet {
        &self.pos_set
    }

    pub fn neg_set(&self) -> &AtomSet {
        &self.neg_set
    }

    pub fn is_normal(&self) -> bool {
        self.head.len() == 1
    }

    /// Body true w.r.t. `(t, p)`: positive body in `t`, negative body outside `p`.
    pub fn body_true_in(&self, t: &AtomSet, p: &AtomSet) -> bool {
        self.pos_set.is_subset(t) && self.neg_set.is_disjoint(p)
    }

    /// Body not false w.r.t. `(t, p)`: positive body in `p`, negative body outside `t`.
    pub fn body_possible_in(&self, t: &AtomSet, p: &AtomSet) -> bool {
        self.pos_set.is_subset(p) && self.neg_set.is_disjoint(t)
    }
}

/// A ground disjunctive hybrid MKNF knowledge base `(O, P)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnowledgeBase {
    atoms: Vec<Atom>,
    ka: AtomSet,
    ka_order: Vec<AtomId>,
    ontology: Vec<Formula>,
    rules: Vec<Rule>,
}

impl KnowledgeBase {
    /// Builds a knowledge base from name-level syntax.
    pub fn new(
        ontology: Vec<Formula<Atom>>,
        rules: Vec<RuleSyntax>,
    ) -> Result<KnowledgeBase, KbError> {
        let mut interner = Interner::default();
        for (i, rule) in rules.iter().enumerate() {
            if rule.head.is_empty() {
                return Err(KbError::EmptyHead { rule: i + 1 });
            }
            for (part, atoms) in
                [("head", &rule.head), ("positive body", &rule.body_pos), ("negative body", &rule.body_neg)]
            {
                for (j, a) in atoms.iter().enumerate() {
                    if atoms[..j].contains(a) {
                        return Err(KbError::DuplicateAtom {
                            rule: i + 1,
                            part,
                            atom: a.name().to_owned(),
                        });
                    }
                    interner.intern(a);
                }
            }
        }
        let ka_len = interner.atoms.len();
        let ontology = ontology
            .iter()
            .map(|f| f.map_atoms(&mut |a| interner.intern(a)))
            .collect();
        let rules = rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let ids = |atoms: &[Atom]| atoms.iter().map(|a| interner.ids[a]).collect();
                Rule::new(i + 1, ids(&r.head), ids(&r.body_pos), ids(&r.body_neg))
            })
            .collect();
        Ok(KnowledgeBase {
            atoms: interner.atoms,
            ka: AtomSet::first_n(ka_len),
            ka_order: (0..ka_len as u32).map(AtomId).collect(),
            ontology,
            rules,
        })
    }

    pub fn empty() -> KnowledgeBase {
        KnowledgeBase::new(Vec::new(), Vec::new()).expect("empty knowledge base is valid")
    }

    /// All atoms, indexed by [`AtomId`].
    pub fn signature(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn signature_set(&self) -> AtomSet {
        AtomSet::first_n(self.atoms.len())
    }

    /// The K-atoms of the program: every atom in some rule head or body.
    pub fn ka(&self) -> &AtomSet {
        &self.ka
    }

    /// KA in order of first occurrence in the program.
    pub fn ka_order(&self) -> &[AtomId] {
        &self.ka_order
    }

    pub fn ontology(&self) -> &[Formula] {
        &self.ontology
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Looks up a rule by its 1-based id.
    pub fn rule(&self, id: usize) -> Option<&Rule> {
        id.checked_sub(1).and_then(|i| self.rules.get(i))
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn name(&self, id: AtomId) -> &str {
        self.atoms[id.index()].name()
    }

    pub fn id_of(&self, name: &str) -> Option<AtomId> {
        self.atoms.iter().position(|a| a.name() == name).map(|i| AtomId(i as u32))
    }

    /// Atoms occurring in the ontology.
    pub fn ontology_atoms(&self) -> AtomSet {
        let mut set = AtomSet::new();
        for f in &self.ontology {
            f.for_each_atom(&mut |a| {
                set.insert(*a);
            });
        }
        set
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(Rule::is_normal)
    }

    /// A knowledge base over the same signature whose rule `r` has head
    /// `[choose(r)]`. KA is recomputed from the new program.
    pub fn with_single_heads(&self, mut choose: impl FnMut(&Rule) -> AtomId) -> KnowledgeBase {
        let rules: Vec<Rule> = self
            .rules
            .iter()
            .map(|r| {
                let h = choose(r);
                debug_assert!(r.head_set.contains(h));
                Rule::new(r.id, vec![h], r.body_pos.clone(), r.body_neg.clone())
            })
            .collect();
        let ka: AtomSet = rules
            .iter()
            .flat_map(|r| r.head.iter().chain(&r.body_pos).chain(&r.body_neg).copied())
            .collect();
        let ka_order = self.ka_order.iter().copied().filter(|a| ka.contains(*a)).collect();
        KnowledgeBase { atoms: self.atoms.clone(), ka, ka_order, ontology: self.ontology.clone(), rules }
    }

    /// Name-level view of the program, in source order.
    pub fn rule_syntax(&self) -> Vec<RuleSyntax> {
        let names = |ids: &[AtomId]| ids.iter().map(|&a| self.atom(a).clone()).collect();
        self.rules
            .iter()
            .map(|r| RuleSyntax {
                head: names(&r.head),
                body_pos: names(&r.body_pos),
                body_neg: names(&r.body_neg),
            })
            .collect()
    }

    pub fn ontology_syntax(&self) -> Vec<Formula<Atom>> {
        self.ontology.iter().map(|f| f.map_atoms(&mut |&a| self.atom(a).clone())).collect()
    }

    pub fn names<'a>(&'a self, set: &'a AtomSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().map(move |a| self.name(a))
    }

    /// Formats a set as `{a, b}` in identifier order.
    pub fn display_set(&self, set: &AtomSet) -> String {
        format!("{{{}}}", self.names(set).collect::<Vec<_>>().join(", "))
    }

    pub fn display_formula(&self, f: &Formula) -> String {
        let mut s = String::new();
        f.write_with(&mut s, &|&a: &AtomId| self.name(a).to_owned())
            .expect("writing to a String cannot fail");
        s
    }

    pub fn display_rule(&self, r: &Rule) -> String {
        let join = |ids: &[AtomId], sep: &str| {
            ids.iter().map(|&a| self.name(a)).collect::<Vec<_>>().join(sep)
        };
        let mut s = join(&r.head, " ; ");
        if !r.body_pos.is_empty() || !r.body_neg.is_empty() {
            s.push_str(" :- ");
            let body: Vec<String> = r
                .body_pos
                .iter()
                .map(|&a| self.name(a).to_owned())
                .chain(r.body_neg.iter().map(|&a| format!("not {}", self.name(a))))
                .collect();
            s.push_str(&body.join(", "));
        }
        s.push('.');
        s
    }
}

pub const RENDER_HEADER: &str = "% hybrid MKNF knowledge base";

/// Canonical text form: a header comment, then one `#ont` line per ontology
/// formula, then one line per rule.
pub fn render_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    out.push_str(RENDER_HEADER);
    out.push('\n');
    for f in &kb.ontology {
        let _ = writeln!(out, "#ont {}.", kb.display_formula(f));
    }
    for r in &kb.rules {
        out.push_str(&kb.display_rule(r));
        out.push('\n');
    }
    out
}

#[derive(Default)]
struct Interner {
    atoms: Vec<Atom>,
    ids: HashMap<Atom, AtomId>,
}

impl Interner {
    fn intern(&mut self, a: &Atom) -> AtomId {
        if let Some(&id) = self.ids.get(a) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(a.clone());
        self.ids.insert(a.clone(), id);
        id
    }
}
