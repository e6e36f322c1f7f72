use std::fmt::Write;

use super::database::{Database, UnaryPred};
use super::query::Cq;
use super::syntax::{Concept, Ontology, Role};
use super::vocab::Vocab;

pub fn role_str(vocab: &Vocab, r: Role) -> String {
    if r.inverted {
        format!("inv({})", vocab.name(r.name))
    } else {
        vocab.name(r.name).to_string()
    }
}

pub fn concept_str(vocab: &Vocab, c: &Concept) -> String {
    match c {
        Concept::Top => "top".to_string(),
        Concept::Name(a) => vocab.name(*a).to_string(),
        Concept::Conj(a, b) => {
            format!("({} and {})", concept_str(vocab, a), concept_str(vocab, b))
        }
        Concept::Exists(r, c) => {
            format!("(exists {} . {})", role_str(vocab, *r), concept_str(vocab, c))
        }
    }
}

/// Canonical printer; `parse_ontology ∘ print_ontology` is the identity.
pub fn print_ontology(vocab: &Vocab, ont: &Ontology) -> String {
    let mut out = String::new();
    for (l, r) in &ont.cis {
        let _ = writeln!(out, "{} sub {}", concept_str(vocab, l), concept_str(vocab, r));
    }
    for (r, s) in &ont.ris {
        let _ = writeln!(out, "{} subr {}", role_str(vocab, *r), role_str(vocab, *s));
    }
    for f in &ont.funcs {
        let _ = writeln!(out, "func({})", role_str(vocab, *f));
    }
    out
}

pub fn print_database(vocab: &Vocab, db: &Database) -> String {
    let mut out = String::new();
    for (p, c) in db.unary_facts() {
        match p {
            UnaryPred::Top => {
                let _ = writeln!(out, "top({}).", vocab.name(*c));
            }
            UnaryPred::Name(a) => {
                let _ = writeln!(out, "{}({}).", vocab.name(*a), vocab.name(*c));
            }
        }
    }
    for (r, c, d) in db.binary_facts() {
        let _ = writeln!(out, "{}({},{}).", vocab.name(*r), vocab.name(*c), vocab.name(*d));
    }
    out
}

pub fn print_query(vocab: &Vocab, q: &Cq) -> String {
    let mut out = String::from("q(");
    out.push_str(
        &q.answer_vars
            .iter()
            .map(|v| vocab.name(*v))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push_str(") :- ");
    let mut atoms: Vec<String> = Vec::new();
    for (a, v) in &q.concept_atoms {
        atoms.push(format!("{}({})", vocab.name(*a), vocab.name(*v)));
    }
    for (r, x, y) in &q.role_atoms {
        atoms.push(format!("{}({},{})", vocab.name(*r), vocab.name(*x), vocab.name(*y)));
    }
    out.push_str(&atoms.join(", "));
    out.push('.');
    out
}
