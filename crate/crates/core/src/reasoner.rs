//! Semantic primitives over normalized ELIHF ontologies: saturation of
//! concept types, entailment of successor queries `q¹_{ρ,M}`, and the role
//! hierarchy / functionality entailments.
//!
//! The core structure is a worklist fixpoint over concept types. For a type
//! `M` (a set of concept names), the saturation is the set of concept names
//! entailed at a constant carrying exactly the facts `{A(ĉ) | A ∈ M}`, and
//! the successor requirements are the maximal pairs `(ρ, N)` such that in
//! every model `ĉ` has a single element reachable via all roles in `ρ` that
//! satisfies all names in `N`. Requirements that share an entailed-functional
//! role are merged, since their witnesses coincide in every model; when a
//! requirement of a child points back at its parent through a functional
//! role, the child's requirement flows back onto the parent. The fixpoint is
//! monotone over a finite lattice and therefore terminates.
//!
//! The type table is materialized lazily from the seed types that are
//! actually queried; the worst case is exponential in the size of the
//! ontology, as expected for ELIHF.
//!
//! The saturation cache is built single-threaded; a finished [`Reasoner`] is
//! only read.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::syntax::{NormalCi, NotNormalized, Ontology, Role};
use crate::model::vocab::Sym;

/// A set of concept names, the label of one element.
pub type ConceptType = BTreeSet<Sym>;

/// A maximal successor requirement `(ρ, M)`: every model must provide one
/// successor reachable via all roles of `ρ` and satisfying all of `M`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SuccessorReq {
    pub roles: BTreeSet<Role>,
    pub target: ConceptType,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Req {
    roles: BTreeSet<Role>,
    target: ConceptType,
}

#[derive(Clone, Debug)]
struct Entry {
    label: ConceptType,
    reqs: Vec<Req>,
}

#[derive(Default, Debug)]
struct Table {
    entries: Vec<Entry>,
    by_key: HashMap<Vec<Sym>, usize>,
}

pub struct Reasoner {
    cis: Vec<NormalCi>,
    ris: Vec<(Role, Role)>,
    concepts: BTreeSet<Sym>,
    top_subs: Vec<Sym>,
    conj_subs: Vec<(Sym, Sym, Sym)>,
    sub_exists: Vec<(Sym, Role, Sym)>,
    exists_sub: Vec<(Role, Sym, Sym)>,
    funcs_asserted: BTreeSet<Role>,
    ri_closure: BTreeMap<Role, BTreeSet<Role>>,
    table: RefCell<Table>,
}

impl Reasoner {
    pub fn new(ont: &Ontology) -> Result<Self, NotNormalized> {
        if !ont.normalized {
            return Err(NotNormalized("run normalize() first".into()));
        }
        let mut top_subs = Vec::new();
        let mut conj_subs = Vec::new();
        let mut sub_exists = Vec::new();
        let mut exists_sub = Vec::new();
        for ci in ont.normal_cis()? {
            match ci {
                NormalCi::TopSub(a) => top_subs.push(a),
                NormalCi::ConjSub(a, b, c) => conj_subs.push((a, b, c)),
                NormalCi::SubExists(a, r, b) => sub_exists.push((a, r, b)),
                NormalCi::ExistsSub(r, a, b) => exists_sub.push((r, a, b)),
            }
        }
        let funcs_asserted: BTreeSet<Role> = ont.funcs.iter().copied().collect();
        let ri_closure = build_ri_closure(ont);
        Ok(Reasoner {
            cis: ont.normal_cis()?,
            ris: ont.ris.clone(),
            concepts: ont.sig().concepts,
            top_subs,
            conj_subs,
            sub_exists,
            exists_sub,
            funcs_asserted,
            ri_closure,
            table: RefCell::new(Table::default()),
        })
    }

    /// Reflexive-transitive closure of the declared role inclusions, closed
    /// under inverses: `O ⊨ R ⊑ S`.
    pub fn entails_role_incl(&self, r: Role, s: Role) -> bool {
        r == s || self.ri_closure.get(&r).map(|set| set.contains(&s)).unwrap_or(false)
    }

    pub fn role_closure(&self, r: Role) -> BTreeSet<Role> {
        match self.ri_closure.get(&r) {
            Some(set) => set.clone(),
            None => BTreeSet::from([r]),
        }
    }

    /// `O ⊨ func(R)`: some superrole of `R` carries a functionality
    /// assertion. Agrees with the satisfiability reduction over the
    /// two-successor database.
    pub fn entails_func(&self, r: Role) -> bool {
        self.role_closure(r).iter().any(|s| self.funcs_asserted.contains(s))
    }

    pub fn has_func_assertions(&self) -> bool {
        !self.funcs_asserted.is_empty()
    }

    pub fn is_asserted_func(&self, r: Role) -> bool {
        self.funcs_asserted.contains(&r)
    }

    pub fn asserted_funcs(&self) -> Vec<Role> {
        self.funcs_asserted.iter().copied().collect()
    }

    pub fn normal_cis(&self) -> Vec<NormalCi> {
        self.cis.clone()
    }

    pub fn declared_ris(&self) -> Vec<(Role, Role)> {
        self.ris.clone()
    }

    pub fn exists_sub_axioms(&self) -> &[(Role, Sym, Sym)] {
        &self.exists_sub
    }

    pub fn sub_exists_axioms(&self) -> &[(Sym, Role, Sym)] {
        &self.sub_exists
    }

    /// Concept names occurring in the ontology.
    pub fn known_concepts(&self) -> &BTreeSet<Sym> {
        &self.concepts
    }

    /// `{A | D_M, O ⊨ A(ĉ)}` — monotone in `m`, and a fixed point.
    pub fn entailed_concepts(&self, m: &ConceptType) -> ConceptType {
        let idx = self.stabilized_entry(m);
        self.table.borrow().entries[idx].label.clone()
    }

    /// All maximal `(ρ, M)` with `D_m, O ⊨ q¹_{ρ,M}(ĉ)`. Requirements
    /// sharing an entailed-functional role have been merged.
    pub fn maximal_succs(&self, m: &ConceptType) -> Vec<SuccessorReq> {
        let idx = self.stabilized_entry(m);
        let table = self.table.borrow();
        let reqs = &table.entries[idx].reqs;
        let mut out: Vec<SuccessorReq> = Vec::new();
        for r in reqs {
            let cand = SuccessorReq { roles: r.roles.clone(), target: r.target.clone() };
            let dominated = reqs.iter().any(|o| {
                (o.roles != r.roles || o.target != r.target)
                    && o.roles.is_superset(&r.roles)
                    && o.target.is_superset(&r.target)
            });
            if !dominated && !out.contains(&cand) {
                out.push(cand);
            }
        }
        out.sort();
        out
    }

    /// True iff some maximal requirement dominates `(ρ, m2)` componentwise.
    pub fn entails_succ(&self, m: &ConceptType, rho: &BTreeSet<Role>, m2: &ConceptType) -> bool {
        if rho.is_empty() {
            return false;
        }
        self.maximal_succs(m)
            .iter()
            .any(|req| req.roles.is_superset(rho) && req.target.is_superset(m2))
    }

    fn stabilized_entry(&self, m: &ConceptType) -> usize {
        let mut table = self.table.borrow_mut();
        let idx = self.ensure(&mut table, m);
        self.stabilize(&mut table);
        idx
    }

    fn ensure(&self, table: &mut Table, seed: &ConceptType) -> usize {
        let key: Vec<Sym> = seed.iter().copied().collect();
        if let Some(&idx) = table.by_key.get(&key) {
            return idx;
        }
        let mut label = seed.clone();
        self.local_close(&mut label);
        let idx = table.entries.len();
        table.entries.push(Entry { label, reqs: Vec::new() });
        table.by_key.insert(key, idx);
        idx
    }

    fn local_close(&self, label: &mut ConceptType) {
        label.extend(self.top_subs.iter().copied());
        loop {
            let mut added = false;
            for &(a, b, c) in &self.conj_subs {
                if label.contains(&a) && label.contains(&b) && label.insert(c) {
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
    }

    fn stabilize(&self, table: &mut Table) {
        loop {
            let mut changed = false;
            let mut idx = 0;
            while idx < table.entries.len() {
                changed |= self.update_entry(table, idx);
                idx += 1;
            }
            if !changed {
                break;
            }
        }
    }

    /// One monotone pass over a single type: grow the label and the
    /// requirement set using the current state of all other entries.
    fn update_entry(&self, table: &mut Table, idx: usize) -> bool {
        let mut label = table.entries[idx].label.clone();
        let mut reqs = table.entries[idx].reqs.clone();
        let before_label = label.len();
        let before_reqs = reqs.clone();

        self.local_close(&mut label);
        // Seed one requirement per applicable ∃-axiom.
        for &(a, r, b) in &self.sub_exists {
            if label.contains(&a) {
                self.add_req(&mut reqs, self.role_closure(r), BTreeSet::from([b]));
            }
        }

        loop {
            let mut inner = false;

            // Merge requirements whose witnesses must coincide: they share a
            // role with an asserted functionality (ρ sets are RI-closed, so
            // this captures entailed functionality as well).
            'merge: loop {
                for i in 0..reqs.len() {
                    for j in i + 1..reqs.len() {
                        let shared_func = reqs[i]
                            .roles
                            .intersection(&reqs[j].roles)
                            .any(|f| self.funcs_asserted.contains(f));
                        if shared_func {
                            let other = reqs.remove(j);
                            let merged = &mut reqs[i];
                            merged.roles.extend(other.roles);
                            merged.target.extend(other.target);
                            inner = true;
                            continue 'merge;
                        }
                    }
                }
                break;
            }

            for req in reqs.iter_mut() {
                // Propagation from the parent through inverse roles: the
                // witness sees the parent via S whenever S⁻ ∈ ρ.
                for &(s, a, b) in &self.exists_sub {
                    if req.roles.contains(&s.inverse()) && label.contains(&a) && req.target.insert(b)
                    {
                        inner = true;
                    }
                }
                // Saturate the target as a type of its own.
                let child = self.ensure(table, &req.target);
                let child_label = table.entries[child].label.clone();
                if !child_label.is_subset(&req.target) {
                    req.target.extend(child_label);
                    inner = true;
                }
            }

            // Back-propagation into the label.
            let mut label_adds: Vec<Sym> = Vec::new();
            let mut role_adds: Vec<(usize, BTreeSet<Role>)> = Vec::new();
            for (ri, req) in reqs.iter().enumerate() {
                for &(s, a, b) in &self.exists_sub {
                    if req.roles.contains(&s) && req.target.contains(&a) {
                        label_adds.push(b);
                    }
                }
                // A requirement of the child that points back through an
                // entailed-functional role is witnessed by the parent: its
                // target lands on the label and its roles flow back inverted.
                let child = self.ensure(table, &req.target);
                let child_reqs = table.entries[child].reqs.clone();
                for creq in child_reqs {
                    let back = creq
                        .roles
                        .iter()
                        .any(|f| req.roles.contains(&f.inverse()) && self.entails_func(*f));
                    if back {
                        label_adds.extend(creq.target.iter().copied());
                        role_adds
                            .push((ri, creq.roles.iter().map(|s| s.inverse()).collect()));
                    }
                }
            }
            for a in label_adds {
                if label.insert(a) {
                    inner = true;
                }
            }
            for (ri, roles) in role_adds {
                for r in roles {
                    if reqs[ri].roles.insert(r) {
                        inner = true;
                    }
                }
            }

            if !inner {
                break;
            }
        }

        let changed = label.len() != before_label || reqs != before_reqs;
        table.entries[idx].label = label;
        table.entries[idx].reqs = reqs;
        changed
    }

    fn add_req(&self, reqs: &mut Vec<Req>, roles: BTreeSet<Role>, target: ConceptType) {
        let dominated = reqs
            .iter()
            .any(|r| r.roles.is_superset(&roles) && r.target.is_superset(&target));
        if !dominated {
            reqs.push(Req { roles, target });
        }
    }
}

fn build_ri_closure(ont: &Ontology) -> BTreeMap<Role, BTreeSet<Role>> {
    let mut roles: BTreeSet<Role> = BTreeSet::new();
    for (r, s) in &ont.ris {
        roles.extend([*r, r.inverse(), *s, s.inverse()]);
    }
    for f in &ont.funcs {
        roles.extend([*f, f.inverse()]);
    }
    for ci in &ont.cis {
        collect_ci_roles(&ci.0, &mut roles);
        collect_ci_roles(&ci.1, &mut roles);
    }
    let mut closure: BTreeMap<Role, BTreeSet<Role>> = BTreeMap::new();
    for &r in &roles {
        closure.insert(r, BTreeSet::from([r]));
    }
    loop {
        let mut changed = false;
        for (r, s) in &ont.ris {
            for (sub, sup) in [(*r, *s), (r.inverse(), s.inverse())] {
                let pointing: Vec<Role> = closure
                    .iter()
                    .filter(|(_, set)| set.contains(&sub))
                    .map(|(k, _)| *k)
                    .collect();
                for k in pointing {
                    let set = closure.get_mut(&k).unwrap();
                    if set.insert(sup) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    closure
}

fn collect_ci_roles(c: &crate::model::syntax::Concept, out: &mut BTreeSet<Role>) {
    use crate::model::syntax::Concept;
    match c {
        Concept::Top | Concept::Name(_) => {}
        Concept::Conj(a, b) => {
            collect_ci_roles(a, out);
            collect_ci_roles(b, out);
        }
        Concept::Exists(r, inner) => {
            out.extend([*r, r.inverse()]);
            collect_ci_roles(inner, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_ontology, Vocab};

    fn setup(src: &str) -> (Vocab, Reasoner) {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(&mut vocab, src).unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        (vocab, r)
    }

    fn ty(vocab: &Vocab, names: &[&str]) -> ConceptType {
        names.iter().map(|n| vocab.lookup(n).unwrap()).collect()
    }

    #[test]
    fn atomic_subsumption() {
        let (vocab, r) = setup("University sub Academia");
        let sat = r.entailed_concepts(&ty(&vocab, &["University"]));
        assert_eq!(sat, ty(&vocab, &["University", "Academia"]));
    }

    #[test]
    fn empty_type_stays_empty_without_top_axioms() {
        let (_, r) = setup("A sub B");
        assert!(r.entailed_concepts(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn backprop_through_existential() {
        let (vocab, r) = setup("A sub exists r . B\n(exists r . B) sub C");
        let sat = r.entailed_concepts(&ty(&vocab, &["A"]));
        assert_eq!(sat, ty(&vocab, &["A", "C"]));
    }

    #[test]
    fn functionality_merges_requirements() {
        let (vocab, r) = setup(
            "Company sub exists hasEmployee . Person\n\
             TechCompany sub Company\nCarCompany sub Company\n\
             TechFactory sub exists hasOwner . TechCompany\n\
             CarFactory sub exists hasOwner . CarCompany\n\
             func(hasOwner)",
        );
        let m = r.entailed_concepts(&ty(&vocab, &["CarFactory", "TechFactory"]));
        let succs = r.maximal_succs(&m);
        assert_eq!(succs.len(), 1);
        let req = &succs[0];
        let has_owner = Role::new(vocab.lookup("hasOwner").unwrap());
        assert!(req.roles.contains(&has_owner));
        for name in ["TechCompany", "CarCompany", "Company"] {
            assert!(req.target.contains(&vocab.lookup(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn no_existentials_no_requirements() {
        let (vocab, r) = setup("A sub B");
        assert!(r.maximal_succs(&ty(&vocab, &["A"])).is_empty());
    }

    #[test]
    fn role_inclusion_closes_requirement_roles() {
        let (vocab, r) = setup("A sub exists r . B\nr subr s");
        let succs = r.maximal_succs(&ty(&vocab, &["A"]));
        assert_eq!(succs.len(), 1);
        let rr = Role::new(vocab.lookup("r").unwrap());
        let ss = Role::new(vocab.lookup("s").unwrap());
        assert_eq!(succs[0].roles, BTreeSet::from([rr, ss]));
        assert!(succs[0].target.contains(&vocab.lookup("B").unwrap()));
        assert!(r.entails_succ(&ty(&vocab, &["A"]), &BTreeSet::from([rr, ss]), &ty(&vocab, &["B"])));
        assert!(!r.entails_succ(&ty(&vocab, &["B"]), &BTreeSet::from([rr]), &BTreeSet::new()));
    }

    #[test]
    fn func_entailment_via_hierarchy() {
        let (vocab, r) = setup("r subr s\nfunc(s)");
        assert!(r.entails_func(Role::new(vocab.lookup("r").unwrap())));
        assert!(r.entails_func(Role::new(vocab.lookup("s").unwrap())));
        assert!(!r.entails_func(Role::inv(vocab.lookup("r").unwrap())));
        let (vocab2, r2) = setup("A sub B");
        let _ = vocab2;
        assert!(!r2.entails_func(Role::new(Sym(0))));
    }

    #[test]
    fn role_inclusion_entailment() {
        let (vocab, r) = setup("r subr s\ns subr t");
        let rr = Role::new(vocab.lookup("r").unwrap());
        let tt = Role::new(vocab.lookup("t").unwrap());
        assert!(r.entails_role_incl(rr, rr));
        assert!(r.entails_role_incl(rr, tt));
        assert!(r.entails_role_incl(rr.inverse(), tt.inverse()));
        assert!(!r.entails_role_incl(tt, rr));
    }

    #[test]
    fn parent_label_flows_into_child_through_inverse() {
        let (vocab, r) = setup("A sub exists r . B\n(exists inv(r) . A) sub C");
        let succs = r.maximal_succs(&ty(&vocab, &["A"]));
        assert_eq!(succs.len(), 1);
        assert!(succs[0].target.contains(&vocab.lookup("C").unwrap()));
    }

    #[test]
    fn functional_back_requirement_lands_on_parent() {
        // The child's s-requirement points back through functional s: its
        // witness is the parent itself.
        let (vocab, r) = setup("A sub exists r . B\nB sub exists inv(r) . C\nfunc(inv(r))");
        let sat = r.entailed_concepts(&ty(&vocab, &["A"]));
        assert!(sat.contains(&vocab.lookup("C").unwrap()));
    }

    #[test]
    fn saturation_is_idempotent_and_monotone() {
        let (vocab, r) = setup(
            "A sub exists r . B\n(exists r . C) sub D\nB sub C\n(A and D) sub E\nfunc(r)",
        );
        let m1 = ty(&vocab, &["A"]);
        let s1 = r.entailed_concepts(&m1);
        assert_eq!(r.entailed_concepts(&s1), s1);
        let m2 = ty(&vocab, &["A", "B"]);
        let s2 = r.entailed_concepts(&m2);
        assert!(s2.is_superset(&s1));
        // A's child satisfies B, hence C, so D and E land on A.
        for n in ["D", "E"] {
            assert!(s1.contains(&vocab.lookup(n).unwrap()), "{n}");
        }
    }
}
