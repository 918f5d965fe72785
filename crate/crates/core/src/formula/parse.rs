//! Text front-end for QBF and modal formulas.
//!
//! Both languages share one propositional layer:
//!
//! ```text
//! formula := 'A' var '.' formula | 'E' var '.' formula | expr      (QBF only)
//! expr    := disj ('->' expr)?                                      right-assoc
//! disj    := conj ('|' conj)*                                       left-assoc
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | prefix unary | atom
//! atom    := 'false' | 'true' | var | '(' formula ')'
//! var     := 'p' digits
//! prefix  := '[]' | '<>' | 'box+' | 'box<=' digits | 'box^' digits | 'dia^' digits
//! ```
//!
//! `true` and the modal prefixes are only accepted by the modal parser. In
//! QBF `~x` is shorthand for `x -> false`, and `&`-chains associate to the
//! left; in modal formulas an unparenthesized `&`-chain is one n-ary
//! conjunction.

use thiserror::Error;

use super::modal::ModalFormula;
use super::qbf::{QbfFormula, Quantifier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unexpected `{found}`, expected {expected}")]
    Unexpected {
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("invalid variable `{0}` (variables are p1, p2, ...)")]
    BadVariable(String),
    #[error("`{0}` is not part of this language")]
    NotInLanguage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall,
    Exists,
    Dot,
    Arrow,
    Bar,
    Amp,
    Tilde,
    False,
    True,
    Var(u32),
    LParen,
    RParen,
    BoxOp,
    DiaOp,
    BoxPlus,
    BoxUpTo(u32),
    BoxPow(u32),
    DiaPow(u32),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Forall => "A".into(),
            Tok::Exists => "E".into(),
            Tok::Dot => ".".into(),
            Tok::Arrow => "->".into(),
            Tok::Bar => "|".into(),
            Tok::Amp => "&".into(),
            Tok::Tilde => "~".into(),
            Tok::False => "false".into(),
            Tok::True => "true".into(),
            Tok::Var(i) => format!("p{i}"),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::BoxOp => "[]".into(),
            Tok::DiaOp => "<>".into(),
            Tok::BoxPlus => "box+".into(),
            Tok::BoxUpTo(n) => format!("box<={n}"),
            Tok::BoxPow(n) => format!("box^{n}"),
            Tok::DiaPow(n) => format!("dia^{n}"),
        }
    }

    fn is_modal_only(&self) -> bool {
        matches!(
            self,
            Tok::True
                | Tok::BoxOp
                | Tok::DiaOp
                | Tok::BoxPlus
                | Tok::BoxUpTo(_)
                | Tok::BoxPow(_)
                | Tok::DiaPow(_)
        )
    }
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| -> (usize, usize) {
        let start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("[]") {
            (Tok::BoxOp, 2)
        } else if rest.starts_with("<>") {
            (Tok::DiaOp, 2)
        } else {
            match c {
                b'.' => (Tok::Dot, 1),
                b'|' => (Tok::Bar, 1),
                b'&' => (Tok::Amp, 1),
                b'~' => (Tok::Tilde, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                c if c.is_ascii_alphanumeric() || c == b'_' => {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                    {
                        j += 1;
                    }
                    let word = &text[i..j];
                    let count = |end: usize, what: &str| -> Result<u32, ParseError> {
                        text[i..end]
                            .trim_start_matches(what)
                            .parse::<u32>()
                            .map_err(|_| {
                                err(start, ParseErrorKind::UnknownToken(text[i..end].into()))
                            })
                    };
                    match word {
                        "A" => (Tok::Forall, 1),
                        "E" => (Tok::Exists, 1),
                        "false" => (Tok::False, 5),
                        "true" => (Tok::True, 4),
                        "box" if text[j..].starts_with('+') => (Tok::BoxPlus, j + 1 - i),
                        "box" if text[j..].starts_with("<=") => {
                            let (s, e) = digits(j + 2);
                            if s == e {
                                return Err(err(
                                    start,
                                    ParseErrorKind::UnknownToken(text[i..j + 2].into()),
                                ));
                            }
                            (Tok::BoxUpTo(count(e, "box<=")?), e - i)
                        }
                        "box" | "dia" if text[j..].starts_with('^') => {
                            let (s, e) = digits(j + 1);
                            if s == e {
                                return Err(err(
                                    start,
                                    ParseErrorKind::UnknownToken(text[i..j + 1].into()),
                                ));
                            }
                            if word == "box" {
                                (Tok::BoxPow(count(e, "box^")?), e - i)
                            } else {
                                (Tok::DiaPow(count(e, "dia^")?), e - i)
                            }
                        }
                        w if w.starts_with('p')
                            && w.len() > 1
                            && w[1..].bytes().all(|b| b.is_ascii_digit()) =>
                        {
                            match w[1..].parse::<u32>() {
                                Ok(k) if k >= 1 => (Tok::Var(k), w.len()),
                                _ => return Err(err(start, ParseErrorKind::BadVariable(w.into()))),
                            }
                        }
                        w => return Err(err(start, ParseErrorKind::UnknownToken(w.into()))),
                    }
                }
                _ => {
                    let ch = rest.chars().next().unwrap();
                    return Err(err(start, ParseErrorKind::UnknownToken(ch.to_string())));
                }
            }
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

/// Formula constructors the shared grammar drives.
trait Syntax {
    type F;
    const MODAL: bool;
    fn var(i: u32) -> Self::F;
    fn falsum() -> Self::F;
    fn verum() -> Self::F;
    fn not(f: Self::F) -> Self::F;
    fn and(items: Vec<Self::F>) -> Self::F;
    fn or(l: Self::F, r: Self::F) -> Self::F;
    fn implies(l: Self::F, r: Self::F) -> Self::F;
    fn prefix(tok: &Tok, f: Self::F) -> Self::F;
    fn quant(q: Quantifier, i: u32, body: Self::F) -> Self::F;
}

struct Qbf;
struct Modal;

impl Syntax for Qbf {
    type F = QbfFormula;
    const MODAL: bool = false;
    fn var(i: u32) -> QbfFormula {
        QbfFormula::Var(i)
    }
    fn falsum() -> QbfFormula {
        QbfFormula::Falsum
    }
    fn verum() -> QbfFormula {
        unreachable!("rejected by the lexer check")
    }
    fn not(f: QbfFormula) -> QbfFormula {
        QbfFormula::not(f)
    }
    fn and(items: Vec<QbfFormula>) -> QbfFormula {
        let mut it = items.into_iter();
        let first = it.next().expect("non-empty chain");
        it.fold(first, QbfFormula::and)
    }
    fn or(l: QbfFormula, r: QbfFormula) -> QbfFormula {
        QbfFormula::or(l, r)
    }
    fn implies(l: QbfFormula, r: QbfFormula) -> QbfFormula {
        QbfFormula::implies(l, r)
    }
    fn prefix(_: &Tok, _: QbfFormula) -> QbfFormula {
        unreachable!("rejected by the lexer check")
    }
    fn quant(q: Quantifier, i: u32, body: QbfFormula) -> QbfFormula {
        QbfFormula::quantified(q, i, body)
    }
}

impl Syntax for Modal {
    type F = ModalFormula;
    const MODAL: bool = true;
    fn var(i: u32) -> ModalFormula {
        ModalFormula::Var(i)
    }
    fn falsum() -> ModalFormula {
        ModalFormula::Falsum
    }
    fn verum() -> ModalFormula {
        ModalFormula::Verum
    }
    fn not(f: ModalFormula) -> ModalFormula {
        ModalFormula::not(f)
    }
    fn and(items: Vec<ModalFormula>) -> ModalFormula {
        ModalFormula::conj(items)
    }
    fn or(l: ModalFormula, r: ModalFormula) -> ModalFormula {
        ModalFormula::or(l, r)
    }
    fn implies(l: ModalFormula, r: ModalFormula) -> ModalFormula {
        ModalFormula::implies(l, r)
    }
    fn prefix(tok: &Tok, f: ModalFormula) -> ModalFormula {
        match tok {
            Tok::BoxOp => ModalFormula::boxed(f),
            Tok::DiaOp => ModalFormula::dia(f),
            Tok::BoxPlus => ModalFormula::box_plus(f),
            Tok::BoxUpTo(n) => ModalFormula::box_up_to(*n, f),
            Tok::BoxPow(n) => ModalFormula::box_pow(*n, f),
            Tok::DiaPow(n) => ModalFormula::dia_pow(*n, f),
            _ => unreachable!("not a modal prefix"),
        }
    }
    fn quant(_: Quantifier, _: u32, _: ModalFormula) -> ModalFormula {
        unreachable!("rejected by the lexer check")
    }
}

struct Parser<'a, S> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    _syntax: std::marker::PhantomData<S>,
}

impl<'a, S: Syntax> Parser<'a, S> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            None => err(self.end, ParseErrorKind::UnexpectedEnd(expected)),
            Some(Tok::RParen) => err(self.offset(), ParseErrorKind::Unbalanced),
            Some(t) => err(
                self.offset(),
                ParseErrorKind::Unexpected {
                    found: t.describe(),
                    expected,
                },
            ),
        }
    }

    fn formula(&mut self) -> Result<S::F, ParseError> {
        match self.peek() {
            Some(Tok::Forall) | Some(Tok::Exists) if !S::MODAL => {
                let q = if self.bump() == Some(&Tok::Forall) {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let i = match self.peek() {
                    Some(Tok::Var(i)) => *i,
                    _ => return Err(self.unexpected("a variable after the quantifier")),
                };
                self.pos += 1;
                if self.peek() != Some(&Tok::Dot) {
                    return Err(self.unexpected("`.`"));
                }
                self.pos += 1;
                let body = self.formula()?;
                Ok(S::quant(q, i, body))
            }
            _ => self.expr(),
        }
    }

    fn expr(&mut self) -> Result<S::F, ParseError> {
        let lhs = self.disj()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(S::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<S::F, ParseError> {
        let mut acc = self.conj()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let rhs = self.conj()?;
            acc = S::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<S::F, ParseError> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            S::and(items)
        })
    }

    fn unary(&mut self) -> Result<S::F, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(S::not(self.unary()?))
            }
            Some(
                t @ (Tok::BoxOp
                | Tok::DiaOp
                | Tok::BoxPlus
                | Tok::BoxUpTo(_)
                | Tok::BoxPow(_)
                | Tok::DiaPow(_)),
            ) => {
                self.pos += 1;
                Ok(S::prefix(t, self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) if !S::MODAL => self.formula(),
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<S::F, ParseError> {
        match self.peek() {
            Some(Tok::False) => {
                self.pos += 1;
                Ok(S::falsum())
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(S::verum())
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(S::var(*i))
            }
            Some(Tok::LParen) => {
                let open = self.offset();
                self.pos += 1;
                let inner = self.formula()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(err(open, ParseErrorKind::Unbalanced)),
                    Some(_) => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

fn run<S: Syntax>(text: &str) -> Result<S::F, ParseError> {
    let toks = lex(text)?;
    if !S::MODAL {
        if let Some((off, t)) = toks.iter().find(|(_, t)| t.is_modal_only()) {
            return Err(err(*off, ParseErrorKind::NotInLanguage(t.describe())));
        }
    }
    let mut p = Parser::<S> {
        toks: &toks,
        pos: 0,
        end: text.len(),
        _syntax: std::marker::PhantomData,
    };
    let f = p.formula()?;
    if p.pos < toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a quantified Boolean formula.
pub fn parse_qbf(text: &str) -> Result<QbfFormula, ParseError> {
    run::<Qbf>(text)
}

/// Parses a modal formula and expands all sugar into core connectives.
pub fn parse_modal(text: &str) -> Result<ModalFormula, ParseError> {
    parse_modal_sugared(text).map(|f| f.expand_sugar())
}

/// Parses a modal formula keeping `box+`, `box<=n`, `box^n`, `dia^n` as
/// sugar nodes.
pub fn parse_modal_sugared(text: &str) -> Result<ModalFormula, ParseError> {
    run::<Modal>(text)
}
