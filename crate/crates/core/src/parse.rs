//! Text format.
//!
//! ```text
//! % comment
//! #ont c -> (b & d).
//! a ; b :- c.
//! x ; y :- p, not q.
//! a.
//! ```
//!
//! Formula precedence, tightest first: `~`, `&`, `|`, `->`, `<->`. `->` is
//! right-associative, the other binary connectives associate to the left.
//! Partitions are written `T: a, b. P: a, b, c.`

use crate::atoms::{Atom, AtomSet};
use crate::error::{KbError, Location, ParseError, ParseErrorKind};
use crate::partition::Partition;
use crate::syntax::{Formula, KnowledgeBase, RuleSyntax};

const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Ont,
    Semi,
    Neck,
    Comma,
    Dot,
    Colon,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Ont => "`#ont`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Location)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let loc = Location { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
            continue;
        }
        let err = |c| ParseError { location: loc, kind: ParseErrorKind::UnexpectedChar(c) };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            Tok::Word(word)
        } else {
            bump!();
            match c {
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ':' if chars.peek() == Some(&'-') => {
                    bump!();
                    Tok::Neck
                }
                ':' => Tok::Colon,
                '-' if chars.peek() == Some(&'>') => {
                    bump!();
                    Tok::Arrow
                }
                '<' => {
                    if bump!() != Some('-') || bump!() != Some('>') {
                        return Err(err(c));
                    }
                    Tok::DoubleArrow
                }
                '#' => {
                    let mut word = String::new();
                    while chars.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                        word.push(bump!().unwrap_or_default());
                    }
                    if word != "ont" {
                        return Err(err(c));
                    }
                    Tok::Ont
                }
                _ => return Err(err(c)),
            }
        };
        toks.push((tok, loc));
    }
    toks.push((Tok::Eof, Location { line, column }));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { location: self.loc(), kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error(ParseErrorKind::Unexpected { expected, found: self.peek().describe() })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Tok::Word(w) => {
                let atom = Atom::new(w)
                    .ok_or_else(|| self.error(ParseErrorKind::InvalidAtom(w.clone())))?;
                self.advance();
                Ok(atom)
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w == word)
    }

    fn formula(&mut self, depth: usize) -> Result<Formula<Atom>, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        let mut lhs = self.implication(depth + 1)?;
        let mut depth = depth;
        while *self.peek() == Tok::DoubleArrow {
            depth += 1;
            if depth > MAX_DEPTH {
                return Err(self.error(ParseErrorKind::TooDeep));
            }
            self.advance();
            lhs = Formula::iff(lhs, self.implication(depth + 1)?);
        }
        Ok(lhs)
    }

    fn implication(&mut self, depth: usize) -> Result<Formula<Atom>, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        let lhs = self.disjunction(depth + 1)?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            return Ok(Formula::implies(lhs, self.implication(depth + 1)?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, depth: usize) -> Result<Formula<Atom>, ParseError> {
        let mut lhs = self.conjunction(depth + 1)?;
        let mut depth = depth;
        while *self.peek() == Tok::Bar {
            depth += 1;
            if depth > MAX_DEPTH {
                return Err(self.error(ParseErrorKind::TooDeep));
            }
            self.advance();
            lhs = Formula::or(lhs, self.conjunction(depth + 1)?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self, depth: usize) -> Result<Formula<Atom>, ParseError> {
        let mut lhs = self.unary(depth + 1)?;
        let mut depth = depth;
        while *self.peek() == Tok::Amp {
            depth += 1;
            if depth > MAX_DEPTH {
                return Err(self.error(ParseErrorKind::TooDeep));
            }
            self.advance();
            lhs = Formula::and(lhs, self.unary(depth + 1)?);
        }
        Ok(lhs)
    }

    fn unary(&mut self, depth: usize) -> Result<Formula<Atom>, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        match self.peek() {
            Tok::Tilde => {
                self.advance();
                Ok(Formula::not(self.unary(depth + 1)?))
            }
            Tok::LParen => {
                self.advance();
                let f = self.formula(depth + 1)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Word(w) if w == "true" => {
                self.advance();
                Ok(Formula::True)
            }
            Tok::Word(w) if w == "false" => {
                self.advance();
                Ok(Formula::False)
            }
            Tok::Word(_) => Ok(Formula::Atom(self.atom()?)),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn rule(&mut self) -> Result<RuleSyntax, ParseError> {
        if *self.peek() == Tok::Neck {
            return Err(self.error(ParseErrorKind::EmptyHead));
        }
        let mut rule = RuleSyntax::default();
        loop {
            let loc = self.loc();
            let a = self.atom()?;
            push_unique(&mut rule.head, a, "head", loc)?;
            if *self.peek() != Tok::Semi {
                break;
            }
            self.advance();
        }
        match self.peek() {
            Tok::Dot => {}
            Tok::Neck => {
                self.advance();
                loop {
                    let loc = self.loc();
                    if self.is_word("not") {
                        self.advance();
                        let a = self.atom()?;
                        push_unique(&mut rule.body_neg, a, "negative body", loc)?;
                    } else {
                        let a = self.atom()?;
                        push_unique(&mut rule.body_pos, a, "positive body", loc)?;
                    }
                    if *self.peek() != Tok::Comma {
                        break;
                    }
                    self.advance();
                }
            }
            _ => return Err(self.unexpected("`;`, `:-` or `.`")),
        }
        self.expect(Tok::Dot, "`.`")?;
        Ok(rule)
    }

    /// `LABEL: a, b, c.` with a possibly empty list.
    fn labelled_list(&mut self, label: &str, expected: &'static str) -> Result<Vec<(Atom, Location)>, ParseError> {
        if !self.is_word(label) {
            return Err(self.unexpected(expected));
        }
        self.advance();
        self.expect(Tok::Colon, "`:`")?;
        let mut out = Vec::new();
        if *self.peek() != Tok::Dot {
            loop {
                let loc = self.loc();
                out.push((self.atom()?, loc));
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.advance();
            }
        }
        self.expect(Tok::Dot, "`.`")?;
        Ok(out)
    }
}

fn push_unique(
    list: &mut Vec<Atom>,
    a: Atom,
    part: &'static str,
    location: Location,
) -> Result<(), ParseError> {
    if list.contains(&a) {
        return Err(ParseError {
            location,
            kind: ParseErrorKind::DuplicateAtom { part, atom: a.name().to_owned() },
        });
    }
    list.push(a);
    Ok(())
}

/// Parses a knowledge base in the text format.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let mut p = Parser::new(text)?;
    let mut ontology = Vec::new();
    let mut rules = Vec::new();
    while *p.peek() != Tok::Eof {
        if *p.peek() == Tok::Ont {
            p.advance();
            ontology.push(p.formula(0)?);
            p.expect(Tok::Dot, "`.`")?;
        } else {
            rules.push(p.rule()?);
        }
    }
    // The parser already rejects the structural errors; this is unreachable
    // in practice but keeps the mapping total.
    KnowledgeBase::new(ontology, rules).map_err(|e| ParseError {
        location: Location { line: 1, column: 1 },
        kind: match e {
            KbError::EmptyHead { .. } => ParseErrorKind::EmptyHead,
            KbError::DuplicateAtom { part, atom, .. } => ParseErrorKind::DuplicateAtom { part, atom },
        },
    })
}

/// Parses a single formula, e.g. `a & b -> c`.
pub fn parse_formula(text: &str) -> Result<Formula<Atom>, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula(0)?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses `T: ... . P: ... .` into a pair of atom sets without checking
/// containment. Atoms must be K-atoms of `kb`.
pub fn parse_pair(kb: &KnowledgeBase, text: &str) -> Result<(AtomSet, AtomSet), ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.labelled_list("T", "`T:`")?;
    let pp = p.labelled_list("P", "`P:`")?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    let resolve = |list: Vec<(Atom, Location)>| -> Result<AtomSet, ParseError> {
        let mut set = AtomSet::new();
        for (a, location) in list {
            let id = kb
                .id_of(a.name())
                .filter(|id| kb.ka().contains(*id))
                .ok_or_else(|| ParseError {
                    location,
                    kind: ParseErrorKind::UnknownAtom(a.name().to_owned()),
                })?;
            if !set.insert(id) {
                return Err(ParseError { location, kind: ParseErrorKind::RepeatedAtom(a.name().to_owned()) });
            }
        }
        Ok(set)
    };
    Ok((resolve(t)?, resolve(pp)?))
}

/// Parses a partition `T: a. P: a, b.` over the K-atoms of `kb`.
pub fn parse_partition(kb: &KnowledgeBase, text: &str) -> Result<Partition, ParseError> {
    let (t, p) = parse_pair(kb, text)?;
    if let Some(a) = t.difference(&p).iter().next() {
        return Err(ParseError {
            location: Location { line: 1, column: 1 },
            kind: ParseErrorKind::NotContained(kb.name(a).to_owned()),
        });
    }
    Ok(Partition::new(kb, t, p).expect("checked above"))
}
