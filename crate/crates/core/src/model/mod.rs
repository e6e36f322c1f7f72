//! Syntax and data model: ELIHF ontologies, databases, conjunctive queries,
//! OMQs, parsing, printing and ontology normalization.
//!
//! Parsed values are immutable after construction and safe to share across
//! threads; parsing itself is single-threaded.

pub mod database;
pub mod parse;
pub mod print;
pub mod query;
pub mod syntax;
pub mod vocab;

pub use database::{Database, UnaryPred};
pub use parse::{parse_database, parse_ontology, parse_query, ParseError};
pub use print::{print_database, print_ontology, print_query};
pub use query::{Cq, Omq, OmqError};
pub use syntax::{normalize, Concept, NormalCi, Ontology, Role, Signature};
pub use vocab::{Sym, Vocab};

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Vocab {
        Vocab::new()
    }

    #[test]
    fn parse_intro_ci() {
        let mut vocab = v();
        let ont = parse_ontology(&mut vocab, "Researcher sub exists worksFor . University")
            .unwrap();
        assert_eq!(ont.cis.len(), 1);
        let (l, r) = &ont.cis[0];
        assert_eq!(*l, Concept::Name(vocab.lookup("Researcher").unwrap()));
        assert_eq!(
            *r,
            Concept::exists(
                Role::new(vocab.lookup("worksFor").unwrap()),
                Concept::Name(vocab.lookup("University").unwrap())
            )
        );
    }

    #[test]
    fn parse_empty_ontology() {
        let mut vocab = v();
        let ont = parse_ontology(&mut vocab, "# nothing here\n\n").unwrap();
        assert!(ont.cis.is_empty() && ont.ris.is_empty() && ont.funcs.is_empty());
    }

    #[test]
    fn parse_func_assertion() {
        let mut vocab = v();
        let ont = parse_ontology(&mut vocab, "func(hasOwner)").unwrap();
        assert_eq!(ont.funcs, vec![Role::new(vocab.lookup("hasOwner").unwrap())]);
        let ont = parse_ontology(&mut vocab, "func(inv(f0))").unwrap();
        assert_eq!(ont.funcs, vec![Role::inv(vocab.lookup("f0").unwrap())]);
    }

    #[test]
    fn parse_db_and_query() {
        let mut vocab = v();
        let db = parse_database(&mut vocab, "Researcher(mary).").unwrap();
        assert_eq!(db.unary_facts().len(), 1);
        assert_eq!(db.adom().len(), 1);

        let q = parse_query(&mut vocab, "q(x,y) :- worksFor(x,y), Academia(y).").unwrap();
        assert_eq!(q.answer_vars.len(), 2);
        assert_eq!(q.atom_count(), 2);

        let empty = parse_database(&mut vocab, "").unwrap();
        assert!(empty.adom().is_empty());
    }

    #[test]
    fn answer_var_must_occur_in_body() {
        let mut vocab = v();
        assert!(parse_query(&mut vocab, "q(x,z) :- A(x).").is_err());
    }

    #[test]
    fn duplicate_facts_are_deduplicated() {
        let mut vocab = v();
        let db = parse_database(&mut vocab, "A(c).\nA(c).\nr(c,d).\nr(c,d).").unwrap();
        assert_eq!(db.fact_count(), 2);
    }

    #[test]
    fn nulls_are_recognized() {
        let mut vocab = v();
        let db = parse_database(&mut vocab, "A(_n3).\nr(_n3,b).").unwrap();
        assert_eq!(db.nulls().len(), 1);
        assert!(db.is_null(vocab.lookup("_n3").unwrap()));
    }

    #[test]
    fn reserved_prefix_rejected() {
        let mut vocab = v();
        assert!(parse_ontology(&mut vocab, "_N0 sub B").is_err());
    }

    #[test]
    fn roundtrip_ontology() {
        let mut vocab = v();
        let src = "A sub (exists r . (B and C))\n(exists inv(s) . top) sub D\nr subr s\nfunc(inv(r))\n";
        let ont = parse_ontology(&mut vocab, src).unwrap();
        let printed = print_ontology(&vocab, &ont);
        let ont2 = parse_ontology(&mut vocab, &printed).unwrap();
        assert_eq!(ont, ont2);
    }

    #[test]
    fn roundtrip_query() {
        let mut vocab = v();
        let src = "q(x,y) :- worksFor(x,y), Academia(y).";
        let q = parse_query(&mut vocab, src).unwrap();
        let printed = print_query(&vocab, &q);
        let q2 = parse_query(&mut vocab, &printed).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn normalize_exists_lhs() {
        let mut vocab = v();
        let ont = parse_ontology(&mut vocab, "(exists r . (A and B)) sub C").unwrap();
        let norm = normalize(&ont, &mut vocab);
        assert!(norm.normalized);
        assert_eq!(norm.cis.len(), 2);
        assert!(norm.normal_cis().is_ok());
        // (A and B) sub X, (exists r . X) sub C
        let x = vocab.lookup("_N0").unwrap();
        assert!(norm.cis.contains(&(
            Concept::and(
                Concept::Name(vocab.lookup("A").unwrap()),
                Concept::Name(vocab.lookup("B").unwrap())
            ),
            Concept::Name(x)
        )));
    }

    #[test]
    fn normalize_exists_rhs() {
        let mut vocab = v();
        let ont = parse_ontology(&mut vocab, "A sub exists r . (B and C)").unwrap();
        let norm = normalize(&ont, &mut vocab);
        assert_eq!(norm.cis.len(), 3);
        assert!(norm.normal_cis().is_ok());
        let x = vocab.lookup("_N0").unwrap();
        assert!(norm.cis.contains(&(
            Concept::Name(vocab.lookup("A").unwrap()),
            Concept::exists(Role::new(vocab.lookup("r").unwrap()), Concept::Name(x))
        )));
    }

    #[test]
    fn normalize_is_identity_on_normal_input() {
        let mut vocab = v();
        let src = "top sub A\n(A and B) sub C\nA sub (exists r . B)\n(exists inv(r) . A) sub B\nA sub B";
        let ont = parse_ontology(&mut vocab, src).unwrap();
        let norm = normalize(&ont, &mut vocab);
        assert_eq!(norm.cis, ont.cis);
        let norm2 = normalize(&norm, &mut vocab);
        assert_eq!(norm2.cis, norm.cis);
    }
}
