//! Textual language for diagrams. A module is a field header followed by
//! `let` definitions; `;` composes top-to-bottom (first operand applied
//! first), `*` tensors and binds tighter, generators are spelled
//! `add zero dup del cup cap swap id scale(c)`, `id[n]` is the n-wire
//! identity, and `#` starts a line comment. Typechecking runs during
//! parsing so errors carry source positions.

use crate::diagram::{build, identity_n, Diagram, NodeKind};
use crate::exactfield::{format_scalar, parse_scalar, FieldError, FieldTag};
use std::fmt;
use thiserror::Error;

/// A location in the source text, 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub col: usize,
    /// Byte offset into the source, for span assertions.
    pub offset: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{position}: parse error: {message}")]
    Parse { position: Position, message: String },
    #[error("{position}: type mismatch: composition needs {expected} wire(s) but the next term takes {found}")]
    TypeMismatch { position: Position, expected: usize, found: usize },
    #[error("{position}: unknown name `{name}`")]
    UnknownName { position: Position, name: String },
    #[error("{position}: duplicate definition of `{name}`")]
    DuplicateName { position: Position, name: String },
}

impl DslError {
    pub fn position(&self) -> Position {
        match self {
            DslError::Parse { position, .. }
            | DslError::TypeMismatch { position, .. }
            | DslError::UnknownName { position, .. }
            | DslError::DuplicateName { position, .. } => *position,
        }
    }
}

/// A parsed module: the declared field and the definitions in source
/// order. Names are unique and may only refer to earlier definitions.
#[derive(Debug, Clone)]
pub struct ModuleSource {
    tag: FieldTag,
    defs: Vec<(String, Diagram)>,
}

impl ModuleSource {
    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn definitions(&self) -> &[(String, Diagram)] {
        &self.defs
    }

    pub fn get(&self, name: &str) -> Option<&Diagram> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    /// Raw text captured between the parentheses of `scale(...)`.
    Scalar(String),
    Semi,
    Star,
    Eq,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Scalar(_) => "scalar".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn here(&self) -> Position {
        Position { line: self.line, col: self.col, offset: self.pos }
    }

    fn bump(&mut self) -> u8 {
        let b = self.src[self.pos];
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        b
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, Position)>, DslError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            if self.pos >= self.src.len() {
                return Ok(out);
            }
            let at = self.here();
            let b = self.src[self.pos];
            let tok = match b {
                b';' => {
                    self.bump();
                    Tok::Semi
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'=' => {
                    self.bump();
                    Tok::Eq
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'[' => {
                    self.bump();
                    Tok::LBracket
                }
                b']' => {
                    self.bump();
                    Tok::RBracket
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let value = text.parse().map_err(|_| DslError::Parse {
                        position: at,
                        message: format!("integer literal `{text}` is out of range"),
                    })?;
                    Tok::Int(value)
                }
                b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && matches!(self.src[self.pos], b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'_')
                    {
                        self.bump();
                    }
                    let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    if word == "scale" {
                        out.push((Tok::Ident(word.into()), at));
                        self.capture_scalar(&mut out)?;
                        continue;
                    }
                    Tok::Ident(word.into())
                }
                _ => {
                    return Err(DslError::Parse {
                        position: at,
                        message: format!("unexpected character `{}`", b as char),
                    })
                }
            };
            out.push((tok, at));
        }
    }

    /// After a `scale` keyword: lex `(`, then capture the raw scalar text
    /// up to the balancing `)` (the scalar grammar has its own
    /// parenthesized subexpressions).
    fn capture_scalar(&mut self, out: &mut Vec<(Tok, Position)>) -> Result<(), DslError> {
        self.skip_trivia();
        let at = self.here();
        if self.pos >= self.src.len() || self.src[self.pos] != b'(' {
            return Err(DslError::Parse {
                position: at,
                message: "expected `(` after `scale`".into(),
            });
        }
        self.bump();
        out.push((Tok::LParen, at));
        let body_at = self.here();
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                _ => {}
            }
            self.bump();
        }
        if self.pos >= self.src.len() {
            return Err(DslError::Parse {
                position: body_at,
                message: "unterminated scalar: missing `)`".into(),
            });
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        out.push((Tok::Scalar(text), body_at));
        let close_at = self.here();
        self.bump();
        out.push((Tok::RParen, close_at));
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const KEYWORDS: &[&str] =
    &["field", "let", "add", "zero", "dup", "del", "cup", "cap", "swap", "id", "scale"];

struct Parser<'a> {
    toks: Vec<(Tok, Position)>,
    idx: usize,
    src_end: Position,
    defs: Vec<(String, Diagram)>,
    tag: FieldTag,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn here(&self) -> Position {
        self.toks.get(self.idx).map_or(self.src_end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<(Tok, Position)> {
        let item = self.toks.get(self.idx).cloned();
        if item.is_some() {
            self.idx += 1;
        }
        item
    }

    fn err(&self, position: Position, message: impl Into<String>) -> DslError {
        DslError::Parse { position, message: message.into() }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Position, DslError> {
        let at = self.here();
        match self.next() {
            Some((tok, pos)) if tok == want => Ok(pos),
            Some((tok, pos)) => {
                Err(self.err(pos, format!("expected {what}, found {}", tok.describe())))
            }
            None => Err(self.err(at, format!("expected {what}, found end of input"))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Position), DslError> {
        let at = self.here();
        match self.next() {
            Some((Tok::Ident(s), pos)) => Ok((s, pos)),
            Some((tok, pos)) => {
                Err(self.err(pos, format!("expected {what}, found {}", tok.describe())))
            }
            None => Err(self.err(at, format!("expected {what}, found end of input"))),
        }
    }

    fn header(&mut self) -> Result<(), DslError> {
        let (kw, pos) = self.expect_ident("`field` header")?;
        if kw != "field" {
            return Err(self.err(pos, format!("expected `field` header, found `{kw}`")));
        }
        let (name, pos) = self.expect_ident("field name (Q, Qs, or GF p)")?;
        self.tag = match name.as_str() {
            "Q" => FieldTag::Q,
            "Qs" => FieldTag::Qs,
            "GF" => {
                let at = self.here();
                match self.next() {
                    Some((Tok::Int(p), ppos)) => FieldTag::gfp(p).map_err(|e| match e {
                        FieldError::InvalidModulus(p) => {
                            self.err(ppos, format!("{p} is not a valid prime modulus"))
                        }
                        other => self.err(ppos, other.to_string()),
                    })?,
                    Some((tok, ppos)) => {
                        return Err(self.err(
                            ppos,
                            format!("expected prime modulus after `GF`, found {}", tok.describe()),
                        ))
                    }
                    None => {
                        return Err(
                            self.err(at, "expected prime modulus after `GF`, found end of input")
                        )
                    }
                }
            }
            other => return Err(self.err(pos, format!("unknown field `{other}`"))),
        };
        Ok(())
    }

    fn module(&mut self) -> Result<(), DslError> {
        self.header()?;
        while self.peek().is_some() {
            let (kw, pos) = self.expect_ident("`let`")?;
            if kw != "let" {
                return Err(self.err(pos, format!("expected `let`, found `{kw}`")));
            }
            let (name, npos) = self.expect_ident("definition name")?;
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.err(npos, format!("`{name}` is a reserved word")));
            }
            if self.defs.iter().any(|(n, _)| *n == name) {
                return Err(DslError::DuplicateName { position: npos, name });
            }
            self.expect(Tok::Eq, "`=`")?;
            let term = self.seq()?;
            self.defs.push((name, term));
        }
        Ok(())
    }

    fn seq(&mut self) -> Result<Diagram, DslError> {
        let mut acc = self.par()?;
        while self.peek() == Some(&Tok::Semi) {
            self.next();
            let at = self.here();
            let rhs = self.par()?;
            if acc.cod() != rhs.dom() {
                return Err(DslError::TypeMismatch {
                    position: at,
                    expected: acc.cod(),
                    found: rhs.dom(),
                });
            }
            acc = Diagram::seq(&acc, &rhs).expect("arity checked");
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Diagram, DslError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let rhs = self.atom()?;
            acc = Diagram::par(&acc, &rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Diagram, DslError> {
        let at = self.here();
        match self.next() {
            Some((Tok::Ident(word), pos)) => match word.as_str() {
                "add" => Ok(build::add()),
                "zero" => Ok(build::zero()),
                "dup" => Ok(build::dup()),
                "del" => Ok(build::delete()),
                "cup" => Ok(build::cup()),
                "cap" => Ok(build::cap()),
                "swap" => Ok(build::braid()),
                "id" => {
                    if self.peek() == Some(&Tok::LBracket) {
                        self.next();
                        let at = self.here();
                        let n = match self.next() {
                            Some((Tok::Int(n), _)) => n as usize,
                            Some((tok, pos)) => {
                                return Err(self.err(
                                    pos,
                                    format!("expected wire count, found {}", tok.describe()),
                                ))
                            }
                            None => {
                                return Err(
                                    self.err(at, "expected wire count, found end of input")
                                )
                            }
                        };
                        self.expect(Tok::RBracket, "`]`")?;
                        Ok(identity_n(n))
                    } else {
                        Ok(build::id())
                    }
                }
                "scale" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let at = self.here();
                    let text = match self.next() {
                        Some((Tok::Scalar(text), _)) => text,
                        _ => return Err(self.err(at, "expected a scalar")),
                    };
                    let c = parse_scalar(&text, self.tag).map_err(|e| match e {
                        FieldError::Parse { position, message } => DslError::Parse {
                            position: Position {
                                line: at.line,
                                col: at.col + position,
                                offset: at.offset + position,
                            },
                            message,
                        },
                        other => self.err(at, other.to_string()),
                    })?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(build::scale(c))
                }
                "let" | "field" => {
                    Err(self.err(pos, format!("expected a term, found `{word}`")))
                }
                name => match self.defs.iter().find(|(n, _)| n == name) {
                    Some((_, d)) => Ok(d.clone()),
                    None => Err(DslError::UnknownName { position: pos, name: name.into() }),
                },
            },
            Some((Tok::LParen, _)) => {
                let term = self.seq()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(term)
            }
            Some((tok, pos)) => {
                Err(self.err(pos, format!("expected a term, found {}", tok.describe())))
            }
            None => Err(self.err(at, "expected a term, found end of input")),
        }
    }
}

/// Parse a whole module: `field` header, then `let` definitions. Each
/// definition may refer to earlier ones by name; terms are typechecked
/// as they are parsed.
pub fn parse_module(text: &str) -> Result<ModuleSource, DslError> {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let src_end = Position { line, col, offset: text.len() };
    let toks = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        toks,
        idx: 0,
        src_end,
        defs: Vec::new(),
        tag: FieldTag::Q,
        _marker: std::marker::PhantomData,
    };
    parser.module()?;
    Ok(ModuleSource { tag: parser.tag, defs: parser.defs })
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

/// Canonical spelling of a term: parsing the result reproduces a
/// structurally equal diagram. Left-associated chains print bare; any
/// other child is parenthesized, so the nesting shape survives the trip.
pub fn print_diagram(d: &Diagram) -> String {
    print_seq(d)
}

fn print_seq(d: &Diagram) -> String {
    match d.kind() {
        NodeKind::Seq(f, g) => format!("{} ; {}", print_seq_left(f), print_atom(g)),
        _ => print_par(d),
    }
}

fn print_seq_left(d: &Diagram) -> String {
    match d.kind() {
        NodeKind::Seq(..) => print_seq(d),
        _ => print_atom(d),
    }
}

fn print_par(d: &Diagram) -> String {
    match d.kind() {
        NodeKind::Par(f, g) => format!("{} * {}", print_par_left(f), print_atom(g)),
        _ => print_atom(d),
    }
}

fn print_par_left(d: &Diagram) -> String {
    match d.kind() {
        NodeKind::Par(..) => print_par(d),
        _ => print_atom(d),
    }
}

fn print_atom(d: &Diagram) -> String {
    use crate::diagram::GenKind;
    match d.kind() {
        NodeKind::Gen(k) => match k {
            GenKind::Add => "add".into(),
            GenKind::Zero => "zero".into(),
            GenKind::Dup => "dup".into(),
            GenKind::Delete => "del".into(),
            GenKind::Cup => "cup".into(),
            GenKind::Cap => "cap".into(),
            GenKind::Id => "id".into(),
            GenKind::Braid => "swap".into(),
            GenKind::Scale(c) => format!("scale({})", format_scalar(c)),
        },
        NodeKind::Empty => "id[0]".into(),
        NodeKind::Seq(..) | NodeKind::Par(..) => format!("({})", print_seq(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;
    use crate::exactfield::FieldElem;

    #[test]
    fn parses_spec_examples() {
        let m = parse_module("field Qs\nlet integrate = scale(1/s)").unwrap();
        assert_eq!(m.tag(), FieldTag::Qs);
        assert_eq!(m.get("integrate").unwrap().signature(), (1, 1));

        let m = parse_module("field Q\nlet zz = (cap * id) ; (id * cup)").unwrap();
        assert_eq!(m.get("zz").unwrap().signature(), (1, 1));
    }

    #[test]
    fn type_mismatch_points_at_second_operand() {
        let err = parse_module("field Q\nlet bad = add ; add").unwrap_err();
        match err {
            DslError::TypeMismatch { position, expected, found } => {
                assert_eq!(expected, 1);
                assert_eq!(found, 2);
                assert_eq!((position.line, position.col), (2, 17));
            }
            other => panic!("expected a type mismatch, got {other:?}"),
        }
    }

    #[test]
    fn names_resolve_in_order() {
        let m = parse_module(
            "field Q\n\
             # a two-wire adder tree\n\
             let half = add * id\n\
             let whole = half ; add",
        )
        .unwrap();
        assert_eq!(m.get("whole").unwrap().signature(), (3, 1));

        let err = parse_module("field Q\nlet a = b").unwrap_err();
        assert!(matches!(err, DslError::UnknownName { ref name, .. } if name == "b"));
        let err = parse_module("field Q\nlet a = id\nlet a = id").unwrap_err();
        assert!(matches!(err, DslError::DuplicateName { .. }));
    }

    #[test]
    fn printer_matches_grammar() {
        let d = seq(&dup(), &pars(vec![id(), id()]));
        assert_eq!(print_diagram(&d), "dup ; (id * id)");
        assert_eq!(print_diagram(&Diagram::empty()), "id[0]");
        let c = parse_scalar("(s+1)/s", FieldTag::Qs).unwrap();
        assert_eq!(print_diagram(&scale(c)), "scale((s+1)/s)");
    }

    #[test]
    fn print_parse_round_trips_structurally() {
        let samples = vec![
            seq(&dup(), &pars(vec![id(), dup()])),
            Diagram::par(&Diagram::par(&add(), &zero()), &cup()),
            Diagram::par(&add(), &Diagram::par(&zero(), &cup())),
            seq(&pars(vec![cap(), id()]), &pars(vec![id(), cup()])),
            Diagram::seq(&id(), &Diagram::seq(&id(), &id()).unwrap()).unwrap(),
            identity_n(3),
            Diagram::empty(),
            scale(FieldElem::from_int(FieldTag::Qs, -2)),
            adjoint(&add()),
        ];
        for d in samples {
            let text = format!("field Qs\nlet t = {}", print_diagram(&d));
            let m = parse_module(&text).unwrap_or_else(|e| panic!("{e} in {text}"));
            assert_eq!(m.get("t").unwrap(), &d, "round trip changed {text}");
        }
    }

    #[test]
    fn error_positions_sit_on_the_offending_token() {
        let err = parse_module("field Q\nlet x = scale(3/0)").unwrap_err();
        let pos = err.position();
        assert_eq!(pos.line, 2);
        assert!(pos.col >= 15, "position {pos} should be inside the scalar");

        let err = parse_module("field GF 6\nlet x = id").unwrap_err();
        assert_eq!((err.position().line, err.position().col), (1, 10));

        let err = parse_module("field Q\nlet x = id @ id").unwrap_err();
        assert_eq!((err.position().line, err.position().col), (2, 12));
    }
}
