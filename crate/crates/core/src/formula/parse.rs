//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := imp ('<->' imp)?
//! imp     := disj ('->' imp)?
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := ('~' | '[]D' | '[]G' | '<>D' | '<>G') unary
//!          | ('forall' | 'exists' | 'forallp' | 'existsp') VAR unary
//!          | '(' formula ')' | atom
//! atom    := NAME '(' term, ... ')' | NAME | term '=' term
//!          | term 'pc' VAR | VAR 'pe' VAR | term 'in' term
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::signature::{Designated, PredDecl, Signature};
use super::syntax::{sort_of_name, Formula, Mode, Sort, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownSymbol,
    SortMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Iff,
    Equals,
    Box(Mode),
    Dia(Mode),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Box(m) => write!(f, "`[]{m}`"),
            Tok::Dia(m) => write!(f, "`<>{m}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &["forall", "exists", "forallp", "existsp", "pc", "pe", "in"];

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| ParseError {
        kind: ParseErrorKind::Syntax,
        line,
        col,
        message: msg,
        expected: vec![],
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            '=' => Some(Tok::Equals),
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                adv = 3;
                Some(Tok::Iff)
            }
            '[' | '<' => {
                let close = if c == '[' { ']' } else { '>' };
                if chars.get(i + 1) != Some(&close) {
                    return Err(err(l0, c0, format!("stray `{c}`")));
                }
                let mode = match chars.get(i + 2) {
                    Some('D') => Mode::D,
                    Some('G') => Mode::G,
                    _ => return Err(err(l0, c0, format!("expected D or G after `{c}{close}`"))),
                };
                adv = 3;
                Some(if c == '[' { Tok::Box(mode) } else { Tok::Dia(mode) })
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                adv = j - i;
                Some(Tok::Ident(chars[i..j].iter().collect()))
            }
            c => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
        };
        if let Some(tok) = tok {
            out.push(Spanned { tok, line: l0, col: c0 });
        }
        i += adv;
        col += adv;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// How unknown symbols are treated.
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Declare predicates on first use instead of rejecting them.
    pub infer_predicates: bool,
    /// Read unbound singular names as constants rather than free variables.
    pub unbound_as_constants: bool,
    /// Names that are always variables, even when `unbound_as_constants` is set.
    pub variables: BTreeSet<String>,
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a mut Signature,
    opts: &'a ParseOptions,
    bound: Vec<Var>,
}

/// Parse against a fixed signature. Names that are not declared constants
/// are variables.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut sig = sig.clone();
    parse_with(text, &mut sig, &ParseOptions::default())
}

/// Parse, declaring predicates on first use and reading unbound singular
/// names as constants. Returns the inferred signature.
pub fn parse_infer(text: &str) -> Result<(Formula, Signature), ParseError> {
    let mut sig = Signature::new();
    let opts = ParseOptions { infer_predicates: true, unbound_as_constants: true, ..Default::default() };
    let f = parse_with(text, &mut sig, &opts)?;
    Ok((f, sig))
}

/// Parse with explicit options; the signature is extended in place when
/// predicates or constants are inferred.
pub fn parse_with(text: &str, sig: &mut Signature, opts: &ParseOptions) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig, opts, bound: Vec::new() };
    let f = p.formula()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind, message: String, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            kind,
            line: s.line,
            col: s.col,
            message,
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(
            ParseErrorKind::Syntax,
            format!("expected {}, found {}", expected.join(" or "), self.peek()),
            expected,
        )
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[what]))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let a = self.implication()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let b = self.implication()?;
            return Ok(Formula::iff(a, b));
        }
        Ok(a)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let a = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let b = self.implication()?;
            return Ok(Formula::implies(a, b));
        }
        Ok(a)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut a = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            a = Formula::or(a, self.conjunction()?);
        }
        Ok(a)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut a = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            a = Formula::and(a, self.unary()?);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box(m) => {
                self.bump();
                Ok(Formula::nec(m, self.unary()?))
            }
            Tok::Dia(m) => {
                self.bump();
                Ok(Formula::poss(m, self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(kw) if matches!(kw.as_str(), "forall" | "exists" | "forallp" | "existsp") => {
                self.bump();
                let v = self.binder(kw.ends_with('p'))?;
                self.bound.push(v.clone());
                let body = self.unary();
                self.bound.pop();
                let body = body?;
                Ok(if kw.starts_with("forall") {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                })
            }
            Tok::Ident(_) => self.atom(),
            _ => Err(self.unexpected(&["formula"])),
        }
    }

    fn binder(&mut self, plural: bool) -> Result<Var, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                let v = Var::new(name.as_str());
                if plural && !v.is_plural() {
                    return Err(self.error(
                        ParseErrorKind::SortMismatch,
                        format!("`{name}` is not a plural variable (plural names end in a doubled letter)"),
                        &["plural variable"],
                    ));
                }
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected(&["variable"])),
        }
    }

    fn is_bound(&self, name: &str) -> bool {
        self.bound.iter().any(|v| v.name() == name)
    }

    fn term_of(&mut self, name: &str) -> Result<Term, ParseError> {
        if KEYWORDS.contains(&name) {
            return Err(self.unexpected(&["term"]));
        }
        if self.is_bound(name) || self.opts.variables.contains(name) || sort_of_name(name) == Sort::Plural {
            return Ok(Term::var(name));
        }
        if self.sig.is_constant(name) {
            return Ok(Term::constant(name));
        }
        if self.opts.unbound_as_constants {
            self.sig.add_constant(name).map_err(|e| {
                self.error(ParseErrorKind::UnknownSymbol, e.to_string(), &[])
            })?;
            return Ok(Term::constant(name));
        }
        Ok(Term::var(name))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let t = self.term_of(&name)?;
                self.bump();
                Ok(t)
            }
            _ => Err(self.unexpected(&["term"])),
        }
    }

    fn singular(&self, t: &Term, what: &str) -> Result<(), ParseError> {
        if t.sort() == Sort::Singular {
            Ok(())
        } else {
            Err(self.error(
                ParseErrorKind::SortMismatch,
                format!("{what} must be singular, found plural `{t}`"),
                &[],
            ))
        }
    }

    fn plural_var(&self, t: Term, what: &str) -> Result<Var, ParseError> {
        match t {
            Term::Var(v) if v.is_plural() => Ok(v),
            t => Err(self.error(
                ParseErrorKind::SortMismatch,
                format!("{what} must be a plural variable, found `{t}`"),
                &[],
            )),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let name = match self.peek().clone() {
            Tok::Ident(n) => n,
            _ => return Err(self.unexpected(&["atom"])),
        };
        if KEYWORDS.contains(&name.as_str()) {
            return Err(self.unexpected(&["atom"]));
        }
        // Infix atoms start with a term.
        match self.peek_at(1).clone() {
            Tok::Equals => {
                let a = self.term()?;
                self.singular(&a, "left side of `=`")?;
                self.bump();
                let b = self.term()?;
                self.singular(&b, "right side of `=`")?;
                return Ok(Formula::eq(a, b));
            }
            Tok::Ident(op) if op == "pc" || op == "pe" || op == "in" => {
                let a = self.term()?;
                self.bump();
                let b = self.term()?;
                return match op.as_str() {
                    "pc" => {
                        self.singular(&a, "left side of `pc`")?;
                        let xx = self.plural_var(b, "right side of `pc`")?;
                        Ok(Formula::prec(a, xx))
                    }
                    "pe" => {
                        let xx = self.plural_var(a, "left side of `pe`")?;
                        let yy = self.plural_var(b, "right side of `pe`")?;
                        Ok(Formula::incl(xx, yy))
                    }
                    _ => {
                        self.singular(&a, "left side of `in`")?;
                        self.singular(&b, "right side of `in`")?;
                        self.require_pred(&Designated::Set.decl())?;
                        Ok(member(a, b))
                    }
                };
            }
            _ => {}
        }
        self.bump();
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RParen => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.unexpected(&["`,`", "`)`"])),
                }
            }
        }
        let sorts: Vec<Sort> = args.iter().map(Term::sort).collect();
        self.require_pred(&PredDecl { name: name.clone(), sorts })?;
        Ok(Formula::Atom(name, args))
    }

    fn require_pred(&mut self, d: &PredDecl) -> Result<(), ParseError> {
        match self.sig.pred(&d.name) {
            Some(s) if s == d.sorts.as_slice() => Ok(()),
            Some(s) => {
                let want: Vec<String> = s.iter().map(Sort::to_string).collect();
                Err(self.error(
                    ParseErrorKind::SortMismatch,
                    format!("predicate {} expects arguments ({})", d.name, want.join(", ")),
                    &[],
                ))
            }
            None if self.opts.infer_predicates => self
                .sig
                .declare(d.clone())
                .map_err(|e| self.error(ParseErrorKind::UnknownSymbol, e.to_string(), &[])),
            None => Err(self.error(
                ParseErrorKind::UnknownSymbol,
                format!("unknown predicate {}", d.name),
                &[],
            )),
        }
    }
}

/// `x in y`: some plurality whose set is y has x among it.
pub fn member(x: Term, y: Term) -> Formula {
    let ss = Var::new("ss");
    Formula::exists(
        ss.clone(),
        Formula::and(
            Formula::atom("Set", vec![Term::Var(ss.clone()), y]),
            Formula::prec(x, ss),
        ),
    )
}
