use std::collections::HashSet;

use super::database::{Database, UnaryPred};
use super::syntax::Signature;
use super::vocab::Sym;

/// A conjunctive query `q(x̄) = ∃ȳ φ(x̄, ȳ)` with concept atoms `A(x)` and
/// role atoms `r(x,y)`. The quantified variables are implicit: they are the
/// body variables that are not answer variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cq {
    pub answer_vars: Vec<Sym>,
    pub concept_atoms: Vec<(Sym, Sym)>,
    pub role_atoms: Vec<(Sym, Sym, Sym)>,
    /// All variables in first-occurrence order (answer tuple, then body).
    pub var_order: Vec<Sym>,
}

impl Cq {
    pub fn new(
        answer_vars: Vec<Sym>,
        concept_atoms: Vec<(Sym, Sym)>,
        role_atoms: Vec<(Sym, Sym, Sym)>,
    ) -> Self {
        let mut var_order = Vec::new();
        let mut seen = HashSet::new();
        let push = |v: Sym, order: &mut Vec<Sym>, seen: &mut HashSet<Sym>| {
            if seen.insert(v) {
                order.push(v);
            }
        };
        for &v in &answer_vars {
            push(v, &mut var_order, &mut seen);
        }
        for &(_, v) in &concept_atoms {
            push(v, &mut var_order, &mut seen);
        }
        for &(_, u, v) in &role_atoms {
            push(u, &mut var_order, &mut seen);
            push(v, &mut var_order, &mut seen);
        }
        Cq { answer_vars, concept_atoms, role_atoms, var_order }
    }

    pub fn vars(&self) -> &[Sym] {
        &self.var_order
    }

    pub fn atom_count(&self) -> usize {
        self.concept_atoms.len() + self.role_atoms.len()
    }

    pub fn is_answer_var(&self, v: Sym) -> bool {
        self.answer_vars.contains(&v)
    }

    pub fn sig(&self) -> Signature {
        let mut sig = Signature::default();
        for &(a, _) in &self.concept_atoms {
            sig.concepts.insert(a);
        }
        for &(r, _, _) in &self.role_atoms {
            sig.roles.insert(r);
        }
        sig
    }

    /// Every relation symbol occurs in at most one atom.
    pub fn is_self_join_free(&self) -> bool {
        let mut seen = HashSet::new();
        self.concept_atoms.iter().all(|&(a, _)| seen.insert((true, a)))
            && self.role_atoms.iter().all(|&(r, _, _)| seen.insert((false, r)))
    }

    /// Connectivity of the graph induced on the variables by the atoms.
    pub fn is_connected(&self) -> bool {
        let vars = self.vars();
        if vars.len() <= 1 {
            return true;
        }
        let mut reached = HashSet::new();
        let mut stack = vec![vars[0]];
        reached.insert(vars[0]);
        while let Some(v) = stack.pop() {
            for &(_, a, b) in &self.role_atoms {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && reached.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        vars.iter().all(|v| reached.contains(v))
    }

    /// The canonical database `D_q`: variables as constants, atoms as facts.
    pub fn canonical_db(&self) -> Database {
        Database::new(
            self.concept_atoms.iter().map(|&(a, v)| (UnaryPred::Name(a), v)).collect(),
            self.role_atoms.clone(),
            HashSet::new(),
        )
    }
}

/// An ontology-mediated query `Q = (O, Σ, q)`.
#[derive(Clone, Debug)]
pub struct Omq {
    pub ontology: super::syntax::Ontology,
    pub sigma: Signature,
    pub query: Cq,
}

#[derive(thiserror::Error, Debug)]
pub enum OmqError {
    #[error("data schema must be contained in sig(O) ∪ sig(q)")]
    SigmaTooLarge,
    #[error("database uses symbol `{0}` outside the data schema")]
    NonSigmaDatabase(String),
}

impl Omq {
    pub fn new(
        ontology: super::syntax::Ontology,
        sigma: Signature,
        query: Cq,
    ) -> Result<Self, OmqError> {
        let full = ontology.sig().union(&query.sig());
        if !sigma.concepts.is_subset(&full.concepts) || !sigma.roles.is_subset(&full.roles) {
            return Err(OmqError::SigmaTooLarge);
        }
        Ok(Omq { ontology, sigma, query })
    }

    /// Default data schema: sig(O) ∪ sig(q).
    pub fn with_default_sigma(
        ontology: super::syntax::Ontology,
        query: Cq,
    ) -> Self {
        let sigma = ontology.sig().union(&query.sig());
        Omq { ontology, sigma, query }
    }

    /// Evaluation is only defined on Σ-databases.
    pub fn check_sigma_db(&self, db: &Database, vocab: &super::vocab::Vocab) -> Result<(), OmqError> {
        for (p, _) in db.unary_facts() {
            if let UnaryPred::Name(a) = p {
                if !self.sigma.contains_concept(*a) {
                    return Err(OmqError::NonSigmaDatabase(vocab.name(*a).to_string()));
                }
            }
        }
        for (r, _, _) in db.binary_facts() {
            if !self.sigma.contains_role(*r) {
                return Err(OmqError::NonSigmaDatabase(vocab.name(*r).to_string()));
            }
        }
        Ok(())
    }
}
