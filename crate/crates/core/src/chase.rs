//! Computation of `ch_O(D)`: closure of a database under ontology
//! consequences without inventing constants.
//!
//! Two paths are provided. [`chase`] encodes the closure as a positive Horn
//! formula, computes its minimal model by unit propagation and reads the
//! closed database off the model; concept saturation per constant is
//! delegated to the reasoner's type table, so a pass is repeated whenever a
//! constant's label grew (the clause schema for entailed conjunction
//! inclusions of arbitrary width would otherwise be exponential).
//! [`naive_chase`] applies the rules R1–R4 directly and serves as the
//! oracle for the Horn path.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::model::database::{Database, UnaryPred};
use crate::model::syntax::{NormalCi, Role};
use crate::model::vocab::Sym;
use crate::reasoner::Reasoner;

#[derive(thiserror::Error, Debug, Clone)]
#[error("database is unsatisfiable: a functional role has two distinct successors")]
pub struct Unsatisfiable;

/// Propositional variable of the Horn encoding: a concept fact or a role
/// fact on an existing edge. Inverse-role facts are normalized to the
/// underlying role name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HornVar {
    Concept(Sym, Sym),
    Edge(Sym, Sym, Sym),
}

/// A positive Horn formula: unit facts and definite implications.
#[derive(Default, Debug)]
pub struct HornFormula {
    pub vars: Vec<HornVar>,
    var_index: HashMap<HornVar, usize>,
    pub units: Vec<usize>,
    pub implications: Vec<(Vec<usize>, usize)>,
}

impl HornFormula {
    pub fn var(&mut self, v: HornVar) -> usize {
        if let Some(&i) = self.var_index.get(&v) {
            return i;
        }
        let i = self.vars.len();
        self.vars.push(v);
        self.var_index.insert(v, i);
        i
    }

    pub fn clause_count(&self) -> usize {
        self.units.len() + self.implications.len()
    }
}

/// The unique minimal model of a positive Horn formula, computed in time
/// linear in the formula size by counting unsatisfied body literals.
pub fn minimal_model(f: &HornFormula) -> Vec<bool> {
    let mut truth = vec![false; f.vars.len()];
    let mut remaining: Vec<usize> = Vec::with_capacity(f.implications.len());
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); f.vars.len()];
    for (ci, (body, _)) in f.implications.iter().enumerate() {
        let distinct: HashSet<usize> = body.iter().copied().collect();
        remaining.push(distinct.len());
        for v in distinct {
            watch[v].push(ci);
        }
    }
    let mut queue: Vec<usize> = Vec::new();
    for &u in &f.units {
        if !truth[u] {
            truth[u] = true;
            queue.push(u);
        }
    }
    for (body, head) in &f.implications {
        if body.is_empty() && !truth[*head] {
            truth[*head] = true;
            queue.push(*head);
        }
    }
    while let Some(v) = queue.pop() {
        for &ci in &watch[v] {
            remaining[ci] -= 1;
            if remaining[ci] == 0 {
                let head = f.implications[ci].1;
                if !truth[head] {
                    truth[head] = true;
                    queue.push(head);
                }
            }
        }
    }
    truth
}

/// Builds one pass of the Horn encoding for the current state of `db`:
/// group (1) unit facts, (2) concept saturation per constant via the type
/// table, (3) `∃R.A ⊑ B` per edge, (4) role inclusions per edge, (5)
/// functionality propagation per `A ⊑ ∃S.B` with `S ⊑* R` and
/// `func(R) ∈ O`. Variables exist only for edges present in `db`.
pub fn build_horn(reasoner: &Reasoner, db: &Database) -> HornFormula {
    let mut f = HornFormula::default();
    let cis = reasoner.normal_cis();
    let mut ont_concepts: BTreeSet<Sym> = BTreeSet::new();
    for ci in &cis {
        match *ci {
            NormalCi::TopSub(a) => ont_concepts.extend([a]),
            NormalCi::ConjSub(a, b, c) => ont_concepts.extend([a, b, c]),
            NormalCi::SubExists(a, _, b) | NormalCi::ExistsSub(_, a, b) => {
                ont_concepts.extend([a, b])
            }
        }
    }

    // (1) unit facts
    for &(p, c) in db.unary_facts() {
        if let UnaryPred::Name(a) = p {
            let v = f.var(HornVar::Concept(a, c));
            f.units.push(v);
        }
    }
    let mut edges: Vec<(Sym, Sym)> = Vec::new();
    let mut edge_seen: HashSet<(Sym, Sym)> = HashSet::new();
    for &(r, c, d) in db.binary_facts() {
        let v = f.var(HornVar::Edge(r, c, d));
        f.units.push(v);
        for (x, y) in [(c, d), (d, c)] {
            if edge_seen.insert((x, y)) {
                edges.push((x, y));
            }
        }
    }

    // (2) saturation of each constant's current label
    for &c in db.adom() {
        let label: BTreeSet<Sym> = db
            .concepts_of(c)
            .intersection(&ont_concepts)
            .copied()
            .collect();
        let sat = reasoner.entailed_concepts(&label);
        let body: Vec<usize> = label.iter().map(|&a| f.var(HornVar::Concept(a, c))).collect();
        for &b in sat.difference(&label) {
            let head = f.var(HornVar::Concept(b, c));
            f.implications.push((body.clone(), head));
        }
    }

    fn edge_var(f: &mut HornFormula, r: Role, c: Sym, d: Sym) -> usize {
        if r.inverted {
            f.var(HornVar::Edge(r.name, d, c))
        } else {
            f.var(HornVar::Edge(r.name, c, d))
        }
    }

    let funcs = reasoner.asserted_funcs();
    for &(c1, c2) in &edges {
        for ci in &cis {
            match *ci {
                // (3) x_{A(c2)} ∧ x_{R(c1,c2)} → x_{B(c1)}
                NormalCi::ExistsSub(r, a, b) => {
                    let av = f.var(HornVar::Concept(a, c2));
                    let rv = edge_var(&mut f, r, c1, c2);
                    let head = f.var(HornVar::Concept(b, c1));
                    f.implications.push((vec![av, rv], head));
                }
                // (5) one clause pair per functional superrole of S
                NormalCi::SubExists(a, s, b) => {
                    for r in reasoner.role_closure(s) {
                        if !funcs.contains(&r) {
                            continue;
                        }
                        let av = f.var(HornVar::Concept(a, c1));
                        let rv = edge_var(&mut f, r, c1, c2);
                        let sv = edge_var(&mut f, s, c1, c2);
                        let bv = f.var(HornVar::Concept(b, c2));
                        f.implications.push((vec![av, rv], sv));
                        f.implications.push((vec![av, rv], bv));
                    }
                }
                _ => {}
            }
        }
        // (4) declared role inclusions per ordered edge
        for (r, s) in reasoner.declared_ris() {
            let rv = edge_var(&mut f, r, c1, c2);
            let sv = edge_var(&mut f, s, c1, c2);
            f.implications.push((vec![rv], sv));
        }
    }
    f
}

fn read_off(db: &Database, f: &HornFormula, truth: &[bool]) -> Database {
    let mut out = db.clone();
    for (i, v) in f.vars.iter().enumerate() {
        if !truth[i] {
            continue;
        }
        match *v {
            HornVar::Concept(a, c) => {
                out.insert_unary(UnaryPred::Name(a), c);
            }
            HornVar::Edge(r, c, d) => {
                out.insert_binary(r, c, d);
            }
        }
    }
    out
}

/// `ch_O(D)` via the Horn encoding. Fails when a functional clash among
/// named constants is detected after closure.
pub fn chase(reasoner: &Reasoner, db: &Database) -> Result<Database, Unsatisfiable> {
    let closed = chase_unchecked(reasoner, db);
    match find_clash(reasoner, &closed) {
        Some(_) => Err(Unsatisfiable),
        None => Ok(closed),
    }
}

/// The Horn fixpoint without the clash check.
pub fn chase_unchecked(reasoner: &Reasoner, db: &Database) -> Database {
    let mut current = db.clone();
    loop {
        let f = build_horn(reasoner, &current);
        let truth = minimal_model(&f);
        let next = read_off(&current, &f, &truth);
        if next.fact_count() == current.fact_count() {
            return next;
        }
        current = next;
    }
}

/// Exhaustive application of the chase rules R1–R4; the oracle for
/// [`chase`]. The result does not depend on the application order. Clash
/// detection is deferred to [`is_satisfiable`].
pub fn naive_chase(reasoner: &Reasoner, db: &Database) -> Database {
    let mut out = db.clone();
    loop {
        let mut changed = false;

        // R1: close every constant's label under entailed conjunction CIs.
        for c in out.adom().to_vec() {
            let label = out.concepts_of(c);
            for a in reasoner.entailed_concepts(&label) {
                changed |= out.insert_unary(UnaryPred::Name(a), c);
            }
        }

        // R3: close every role fact under declared role inclusions.
        for (r, c, d) in out.binary_facts().to_vec() {
            for s in reasoner.role_closure(Role::new(r)) {
                changed |= if s.inverted {
                    out.insert_binary(s.name, d, c)
                } else {
                    out.insert_binary(s.name, c, d)
                };
            }
        }

        // R2: ∃R.A ⊑ B over existing edges.
        for &(r, a, b) in reasoner.exists_sub_axioms() {
            for (rn, c, d) in out.binary_facts().to_vec() {
                if rn != r.name {
                    continue;
                }
                let (src, tgt) = if r.inverted { (d, c) } else { (c, d) };
                if out.has_concept(a, tgt) {
                    changed |= out.insert_unary(UnaryPred::Name(b), src);
                }
            }
        }

        // R4: a requirement containing a functional role with an existing
        // successor is absorbed by that successor.
        for c in out.adom().to_vec() {
            let label = out.concepts_of(c);
            for req in reasoner.maximal_succs(&label) {
                for &fr in &req.roles {
                    if !reasoner.is_asserted_func(fr) {
                        continue;
                    }
                    for d in out.successors(c, fr).to_vec() {
                        for &s in &req.roles {
                            changed |= if s.inverted {
                                out.insert_binary(s.name, d, c)
                            } else {
                                out.insert_binary(s.name, c, d)
                            };
                        }
                        for &a in &req.target {
                            changed |= out.insert_unary(UnaryPred::Name(a), d);
                        }
                    }
                }
            }
        }

        if !changed {
            return out;
        }
    }
}

/// Two distinct named successors under a functional role, if any.
pub fn find_clash(reasoner: &Reasoner, closed: &Database) -> Option<(Role, Sym)> {
    for f in reasoner.asserted_funcs() {
        for &c in closed.adom() {
            let distinct: HashSet<Sym> = closed.successors(c, f).iter().copied().collect();
            if distinct.len() > 1 {
                return Some((f, c));
            }
        }
    }
    None
}

/// Satisfiability of `db` w.r.t. the ontology: the chase must not force two
/// distinct named successors of one constant under a functional role.
pub fn is_satisfiable(reasoner: &Reasoner, db: &Database) -> bool {
    let closed = chase_unchecked(reasoner, db);
    find_clash(reasoner, &closed).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_database, parse_ontology, Vocab};

    fn setup(ont: &str, db: &str) -> (Vocab, Reasoner, Database) {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(&mut vocab, ont).unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        let db = parse_database(&mut vocab, db).unwrap();
        (vocab, r, db)
    }

    #[test]
    fn horn_clauses_for_single_fact() {
        let (_, r, db) = setup("A sub B", "A(c).");
        let f = build_horn(&r, &db);
        assert_eq!(f.units.len(), 1);
        assert_eq!(f.implications.len(), 1);
    }

    #[test]
    fn horn_empty_database() {
        let (_, r, db) = setup("A sub B", "");
        let f = build_horn(&r, &db);
        assert_eq!(f.clause_count(), 0);
    }

    #[test]
    fn minimal_model_trivial_cases() {
        let f = HornFormula::default();
        assert!(minimal_model(&f).is_empty());
        let mut f = HornFormula::default();
        let x = f.var(HornVar::Concept(Sym(0), Sym(1)));
        let y = f.var(HornVar::Concept(Sym(0), Sym(2)));
        f.units.push(x);
        f.implications.push((vec![x], y));
        assert_eq!(minimal_model(&f), vec![true, true]);
    }

    #[test]
    fn chase_example_one_extended() {
        let (vocab, r, db) = setup(
            "Company sub exists hasEmployee . Person\n\
             TechCompany sub Company\nCarCompany sub Company\n\
             TechFactory sub exists hasOwner . TechCompany\n\
             CarFactory sub exists hasOwner . CarCompany\n\
             func(hasOwner)",
            "CarFactory(gigafactory1).\nTechFactory(gigafactory1).\nhasOwner(gigafactory1,tesla).",
        );
        let closed = chase(&r, &db).unwrap();
        let tesla = vocab.lookup("tesla").unwrap();
        for name in ["CarCompany", "TechCompany", "Company"] {
            assert!(closed.has_concept(vocab.lookup(name).unwrap(), tesla), "{name}");
        }
        let naive = naive_chase(&r, &db);
        assert_eq!(closed, naive);
    }

    #[test]
    fn chase_foreign_symbols_unchanged() {
        let (_, r, db) = setup("A sub B", "X(c).\ny(c,d).");
        let closed = chase(&r, &db).unwrap();
        assert_eq!(closed, db);
    }

    #[test]
    fn functional_clash_detected() {
        let (_, r, db) = setup("func(r)", "r(a,b1).\nr(a,b2).");
        assert!(!is_satisfiable(&r, &db));
        assert!(chase(&r, &db).is_err());
    }

    #[test]
    fn clash_via_role_inclusion() {
        let (_, r, db) = setup("r subr s\nfunc(s)", "r(a,b1).\ns(a,b2).");
        assert!(!is_satisfiable(&r, &db));
    }

    #[test]
    fn no_functionality_always_satisfiable() {
        let (_, r, db) = setup("A sub exists r . B\nr subr s", "A(a).\nr(a,b).\nr(a,c).");
        assert!(is_satisfiable(&r, &db));
    }

    #[test]
    fn chase_is_superset_and_preserves_adom() {
        let (_, r, db) = setup(
            "A sub exists r . B\n(exists r . B) sub C\nr subr s",
            "A(a).\nr(a,b).\nB(b).",
        );
        let closed = chase(&r, &db).unwrap();
        assert!(db.subset_of(&closed));
        assert_eq!(closed.adom().len(), db.adom().len());
    }
}
