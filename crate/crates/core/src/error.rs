use std::fmt;

use thiserror::Error;

/// Structural problems with a rule or knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("rule {rule} has an empty head")]
    EmptyHead { rule: usize },
    #[error("rule {rule}: atom `{atom}` appears twice in the {part}")]
    DuplicateAtom { rule: usize, part: &'static str, atom: String },
}

/// Position in source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {kind}")]
pub struct ParseError {
    pub location: Location,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("rule has an empty head")]
    EmptyHead,
    #[error("atom `{atom}` appears twice in the {part}")]
    DuplicateAtom { part: &'static str, atom: String },
    #[error("formula nested too deeply")]
    TooDeep,
    #[error("atom `{0}` is not a K-atom of the knowledge base")]
    UnknownAtom(String),
    #[error("atom `{0}` listed twice")]
    RepeatedAtom(String),
    #[error("true set is not contained in the possibly-true set (`{0}` is in T but not in P)")]
    NotContained(String),
}

/// Errors from the entailment layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntailmentError {
    #[error("signature has {size} atoms, above the enumeration cap of {cap}")]
    SignatureCap { size: usize, cap: usize },
    #[error("atom `{0}` is not a K-atom of the knowledge base")]
    OutsideKa(String),
    #[error("atom `{0}` is not in the theory's signature")]
    UnknownAtom(String),
}

/// Errors from partition construction and the model enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("atom `{0}` is not a K-atom of the knowledge base")]
    OutsideKa(String),
    #[error("T is not a subset of P")]
    NotContained,
    #[error("KA has {size} atoms, above the enumeration cap of {cap}")]
    KaCap { size: usize, cap: usize },
    #[error("the ontology must be empty for this oracle")]
    NonEmptyOntology,
    #[error("rule {0} is disjunctive; a normal knowledge base is required")]
    NotNormal(usize),
    #[error("the pair is inconsistent (lower bound not contained in upper bound)")]
    InconsistentPair,
    #[error("modal operators nested inside a modal operator are not supported")]
    NestedModal,
    #[error(transparent)]
    Entailment(#[from] EntailmentError),
}
