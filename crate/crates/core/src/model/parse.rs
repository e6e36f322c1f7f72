use std::collections::HashSet;

use super::database::{Database, UnaryPred};
use super::query::Cq;
use super::syntax::{Concept, Ontology, Role};
use super::vocab::{is_null_name, is_reserved_name, Sym, Vocab};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    ColonDash,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut lx = Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1, toks: Vec::new() };
    while lx.pos < lx.src.len() {
        let b = lx.src[lx.pos];
        match b {
            b'#' => {
                while lx.pos < lx.src.len() && lx.src[lx.pos] != b'\n' {
                    lx.pos += 1;
                }
            }
            b'\n' => {
                lx.pos += 1;
                lx.line += 1;
                lx.col = 1;
            }
            b' ' | b'\t' | b'\r' => {
                lx.pos += 1;
                lx.col += 1;
            }
            b'(' => lx.push1(Tok::LParen),
            b')' => lx.push1(Tok::RParen),
            b',' => lx.push1(Tok::Comma),
            b'.' => lx.push1(Tok::Dot),
            b':' => {
                if lx.pos + 1 < lx.src.len() && lx.src[lx.pos + 1] == b'-' {
                    let (l, c) = (lx.line, lx.col);
                    lx.toks.push((Tok::ColonDash, l, c));
                    lx.pos += 2;
                    lx.col += 2;
                } else {
                    return Err(err(lx.line, lx.col, "expected `:-`"));
                }
            }
            b if b.is_ascii_alphanumeric() || b == b'_' => {
                let start = lx.pos;
                let (l, c) = (lx.line, lx.col);
                while lx.pos < lx.src.len()
                    && (lx.src[lx.pos].is_ascii_alphanumeric() || lx.src[lx.pos] == b'_')
                {
                    lx.pos += 1;
                    lx.col += 1;
                }
                let word = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap().to_string();
                lx.toks.push((Tok::Ident(word), l, c));
            }
            other => {
                return Err(err(lx.line, lx.col, &format!("unexpected character `{}`", other as char)));
            }
        }
    }
    Ok(lx.toks)
}

impl Lexer<'_> {
    fn push1(&mut self, t: Tok) {
        self.toks.push((t, self.line, self.col));
        self.pos += 1;
        self.col += 1;
    }
}

fn err(line: usize, col: usize, msg: &str) -> ParseError {
    ParseError { line, col, msg: msg.to_string() }
}

struct Cursor {
    toks: Vec<(Tok, usize, usize)>,
    at: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _, _)| t)
    }

    fn pos(&self) -> (usize, usize) {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        let (l, c) = self.pos();
        match self.next() {
            Some(got) if got == *t => Ok(()),
            _ => Err(err(l, c, &format!("expected {what}"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let (l, c) = self.pos();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(err(l, c, &format!("expected {what}"))),
        }
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }
}

const KEYWORDS: &[&str] = &["top", "and", "exists", "sub", "subr", "func", "inv"];

fn check_name(name: &str, line: usize, col: usize) -> Result<(), ParseError> {
    if KEYWORDS.contains(&name) {
        return Err(err(line, col, &format!("keyword `{name}` cannot be used as a name")));
    }
    if is_reserved_name(name) {
        return Err(err(line, col, &format!("`{name}`: the `_N` prefix is reserved")));
    }
    Ok(())
}

/// Parses an ontology document: one axiom per line, `#` comments.
///
/// axiom   ::= concept `sub` concept | role `subr` role | `func(` role `)`
/// concept ::= NAME | `top` | `(` concept `and` concept `)`
///           | [`(`] `exists` role `.` concept [`)`]
/// role    ::= NAME | `inv(` NAME `)`
pub fn parse_ontology(vocab: &mut Vocab, src: &str) -> Result<Ontology, ParseError> {
    let mut ont = Ontology::default();
    for (lineno, line) in src.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = lex(line)?;
        if toks.is_empty() {
            continue;
        }
        let toks = toks
            .into_iter()
            .map(|(t, _, c)| (t, lineno, c))
            .collect::<Vec<_>>();
        let mut cur = Cursor { toks, at: 0 };
        parse_axiom(vocab, &mut cur, &mut ont)?;
        if !cur.done() {
            let (l, c) = cur.pos();
            return Err(err(l, c, "trailing input after axiom"));
        }
    }
    Ok(ont)
}

fn parse_axiom(vocab: &mut Vocab, cur: &mut Cursor, ont: &mut Ontology) -> Result<(), ParseError> {
    if let Some(Tok::Ident(w)) = cur.peek() {
        if w == "func" {
            cur.next();
            cur.expect(&Tok::LParen, "`(`")?;
            let role = parse_role(vocab, cur)?;
            cur.expect(&Tok::RParen, "`)`")?;
            if !ont.funcs.contains(&role) {
                ont.funcs.push(role);
            }
            return Ok(());
        }
    }
    // Role inclusions start with a role; disambiguate by looking for `subr`.
    let save = cur.at;
    if let Ok(r) = parse_role(vocab, cur) {
        if matches!(cur.peek(), Some(Tok::Ident(w)) if w == "subr") {
            cur.next();
            let s = parse_role(vocab, cur)?;
            ont.ris.push((r, s));
            return Ok(());
        }
    }
    cur.at = save;
    let lhs = parse_concept(vocab, cur)?;
    let (l, c) = cur.pos();
    match cur.next() {
        Some(Tok::Ident(w)) if w == "sub" => {}
        _ => return Err(err(l, c, "expected `sub`")),
    }
    let rhs = parse_concept(vocab, cur)?;
    ont.cis.push((lhs, rhs));
    Ok(())
}

fn parse_role(vocab: &mut Vocab, cur: &mut Cursor) -> Result<Role, ParseError> {
    let (l, c) = cur.pos();
    let name = cur.ident("role")?;
    if name == "inv" {
        cur.expect(&Tok::LParen, "`(`")?;
        let (l2, c2) = cur.pos();
        let inner = cur.ident("role name")?;
        check_name(&inner, l2, c2)?;
        cur.expect(&Tok::RParen, "`)`")?;
        Ok(Role::inv(vocab.intern(&inner)))
    } else {
        check_name(&name, l, c)?;
        Ok(Role::new(vocab.intern(&name)))
    }
}

fn parse_concept(vocab: &mut Vocab, cur: &mut Cursor) -> Result<Concept, ParseError> {
    let (l, c) = cur.pos();
    match cur.peek() {
        Some(Tok::LParen) => {
            cur.next();
            // Either `(exists R . C)` or `(C and D)`.
            if matches!(cur.peek(), Some(Tok::Ident(w)) if w == "exists") {
                let e = parse_exists(vocab, cur)?;
                cur.expect(&Tok::RParen, "`)`")?;
                return Ok(e);
            }
            let a = parse_concept(vocab, cur)?;
            let (l2, c2) = cur.pos();
            match cur.next() {
                Some(Tok::Ident(w)) if w == "and" => {}
                _ => return Err(err(l2, c2, "expected `and`")),
            }
            let b = parse_concept(vocab, cur)?;
            cur.expect(&Tok::RParen, "`)`")?;
            Ok(Concept::and(a, b))
        }
        Some(Tok::Ident(w)) if w == "exists" => parse_exists(vocab, cur),
        Some(Tok::Ident(w)) if w == "top" => {
            cur.next();
            Ok(Concept::Top)
        }
        Some(Tok::Ident(_)) => {
            let name = cur.ident("concept name")?;
            check_name(&name, l, c)?;
            Ok(Concept::Name(vocab.intern(&name)))
        }
        _ => Err(err(l, c, "expected a concept")),
    }
}

fn parse_exists(vocab: &mut Vocab, cur: &mut Cursor) -> Result<Concept, ParseError> {
    cur.next(); // `exists`
    let role = parse_role(vocab, cur)?;
    cur.expect(&Tok::Dot, "`.`")?;
    let inner = parse_concept(vocab, cur)?;
    Ok(Concept::exists(role, inner))
}

/// Parses a database document: `NAME(const).` or `NAME(const,const).` per
/// line, `#` comments, nulls written `_n<k>`. Duplicate facts are dropped.
pub fn parse_database(vocab: &mut Vocab, src: &str) -> Result<Database, ParseError> {
    let toks = lex(src)?;
    let mut cur = Cursor { toks, at: 0 };
    let mut unary = Vec::new();
    let mut binary = Vec::new();
    let mut nulls = HashSet::new();
    let constant = |name: String, vocab: &mut Vocab, nulls: &mut HashSet<Sym>| -> Sym {
        let s = vocab.intern(&name);
        if is_null_name(&name) {
            nulls.insert(s);
        }
        s
    };
    while !cur.done() {
        let (l, c) = cur.pos();
        let pred = cur.ident("predicate name")?;
        cur.expect(&Tok::LParen, "`(`")?;
        let a = cur.ident("constant")?;
        match cur.next() {
            Some(Tok::RParen) => {
                let p = if pred == "top" {
                    UnaryPred::Top
                } else {
                    check_name(&pred, l, c)?;
                    UnaryPred::Name(vocab.intern(&pred))
                };
                unary.push((p, constant(a, vocab, &mut nulls)));
            }
            Some(Tok::Comma) => {
                check_name(&pred, l, c)?;
                let b = cur.ident("constant")?;
                cur.expect(&Tok::RParen, "`)`")?;
                binary.push((
                    vocab.intern(&pred),
                    constant(a, vocab, &mut nulls),
                    constant(b, vocab, &mut nulls),
                ));
            }
            _ => return Err(err(l, c, "expected `)` or `,`")),
        }
        cur.expect(&Tok::Dot, "`.`")?;
    }
    Ok(Database::new(unary, binary, nulls))
}

/// Parses a query: `q(v1,...,vk) :- atom, atom, ... .`
pub fn parse_query(vocab: &mut Vocab, src: &str) -> Result<Cq, ParseError> {
    let toks = lex(src)?;
    let mut cur = Cursor { toks, at: 0 };
    cur.ident("query head")?;
    cur.expect(&Tok::LParen, "`(`")?;
    let mut answer_vars: Vec<Sym> = Vec::new();
    if !matches!(cur.peek(), Some(Tok::RParen)) {
        loop {
            let (l, c) = cur.pos();
            let v = cur.ident("answer variable")?;
            check_name(&v, l, c)?;
            let v = vocab.intern(&v);
            if answer_vars.contains(&v) {
                return Err(err(l, c, "duplicate answer variable"));
            }
            answer_vars.push(v);
            match cur.peek() {
                Some(Tok::Comma) => {
                    cur.next();
                }
                _ => break,
            }
        }
    }
    cur.expect(&Tok::RParen, "`)`")?;
    cur.expect(&Tok::ColonDash, "`:-`")?;
    let mut concept_atoms = Vec::new();
    let mut role_atoms = Vec::new();
    loop {
        let (l, c) = cur.pos();
        let pred = cur.ident("atom")?;
        check_name(&pred, l, c)?;
        cur.expect(&Tok::LParen, "`(`")?;
        let x = cur.ident("variable")?;
        check_name(&x, l, c)?;
        match cur.next() {
            Some(Tok::RParen) => {
                concept_atoms.push((vocab.intern(&pred), vocab.intern(&x)));
            }
            Some(Tok::Comma) => {
                let y = cur.ident("variable")?;
                check_name(&y, l, c)?;
                cur.expect(&Tok::RParen, "`)`")?;
                role_atoms.push((vocab.intern(&pred), vocab.intern(&x), vocab.intern(&y)));
            }
            _ => return Err(err(l, c, "expected `)` or `,`")),
        }
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            _ => break,
        }
    }
    cur.expect(&Tok::Dot, "`.`")?;
    if !cur.done() {
        let (l, c) = cur.pos();
        return Err(err(l, c, "trailing input after query"));
    }
    let q = Cq::new(answer_vars, concept_atoms, role_atoms);
    for &v in &q.answer_vars {
        let in_body = q.concept_atoms.iter().any(|&(_, x)| x == v)
            || q.role_atoms.iter().any(|&(_, x, y)| x == v || y == v);
        if !in_body {
            return Err(err(1, 1, &format!("answer variable `{}` does not occur in the body", vocab.name(v))));
        }
    }
    Ok(q)
}
