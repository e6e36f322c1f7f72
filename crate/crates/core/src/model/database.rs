use std::collections::{BTreeSet, HashMap, HashSet};

use super::syntax::{Role, Signature};
use super::vocab::Sym;

/// Unary fact predicate: a concept name or ⊤.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum UnaryPred {
    Top,
    Name(Sym),
}

/// A finite set of facts `A(c)` and `r(c,c')` over constants, a subset of
/// which may be flagged as labeled nulls. Role-edge indexes answer
/// "R-successors of c" (including inverse roles) in time independent of the
/// database size.
#[derive(Clone, Default, Debug)]
pub struct Database {
    unary: Vec<(UnaryPred, Sym)>,
    binary: Vec<(Sym, Sym, Sym)>,
    nulls: HashSet<Sym>,
    adom: Vec<Sym>,
    adom_set: HashSet<Sym>,
    concepts: HashMap<Sym, BTreeSet<Sym>>,
    members: HashMap<Sym, Vec<Sym>>,
    succs: HashMap<(Sym, Role), Vec<Sym>>,
    unary_set: HashSet<(UnaryPred, Sym)>,
    binary_set: HashSet<(Sym, Sym, Sym)>,
}

impl PartialEq for Database {
    fn eq(&self, other: &Self) -> bool {
        self.unary_set == other.unary_set
            && self.binary_set == other.binary_set
            && self.nulls == other.nulls
    }
}

impl Database {
    pub fn new(
        unary: Vec<(UnaryPred, Sym)>,
        binary: Vec<(Sym, Sym, Sym)>,
        nulls: HashSet<Sym>,
    ) -> Self {
        let mut db = Database::default();
        db.nulls = nulls;
        for (p, c) in unary {
            db.insert_unary(p, c);
        }
        for (r, c, d) in binary {
            db.insert_binary(r, c, d);
        }
        db.nulls.retain(|n| db.adom_set.contains(n));
        db
    }

    fn touch(&mut self, c: Sym) {
        if self.adom_set.insert(c) {
            self.adom.push(c);
        }
    }

    pub fn insert_unary(&mut self, p: UnaryPred, c: Sym) -> bool {
        self.touch(c);
        if !self.unary_set.insert((p, c)) {
            return false;
        }
        self.unary.push((p, c));
        if let UnaryPred::Name(a) = p {
            self.concepts.entry(c).or_default().insert(a);
            self.members.entry(a).or_default().push(c);
        }
        true
    }

    pub fn insert_binary(&mut self, r: Sym, c: Sym, d: Sym) -> bool {
        self.touch(c);
        self.touch(d);
        if !self.binary_set.insert((r, c, d)) {
            return false;
        }
        self.binary.push((r, c, d));
        self.succs.entry((c, Role::new(r))).or_default().push(d);
        self.succs.entry((d, Role::inv(r))).or_default().push(c);
        true
    }

    pub fn mark_null(&mut self, c: Sym) {
        self.nulls.insert(c);
    }

    pub fn adom(&self) -> &[Sym] {
        &self.adom
    }

    pub fn contains_const(&self, c: Sym) -> bool {
        self.adom_set.contains(&c)
    }

    pub fn is_null(&self, c: Sym) -> bool {
        self.nulls.contains(&c)
    }

    pub fn nulls(&self) -> &HashSet<Sym> {
        &self.nulls
    }

    pub fn unary_facts(&self) -> &[(UnaryPred, Sym)] {
        &self.unary
    }

    pub fn binary_facts(&self) -> &[(Sym, Sym, Sym)] {
        &self.binary
    }

    pub fn has_unary(&self, p: UnaryPred, c: Sym) -> bool {
        self.unary_set.contains(&(p, c))
    }

    pub fn has_concept(&self, a: Sym, c: Sym) -> bool {
        self.unary_set.contains(&(UnaryPred::Name(a), c))
    }

    /// `R(c,d)` with `R` a role, i.e. `r(c,d)` or `r(d,c)` for inverses.
    pub fn has_role(&self, r: Role, c: Sym, d: Sym) -> bool {
        if r.inverted {
            self.binary_set.contains(&(r.name, d, c))
        } else {
            self.binary_set.contains(&(r.name, c, d))
        }
    }

    pub fn successors(&self, c: Sym, r: Role) -> &[Sym] {
        self.succs.get(&(c, r)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Concept names asserted for `c` (⊤ facts excluded).
    pub fn concepts_of(&self, c: Sym) -> BTreeSet<Sym> {
        self.concepts.get(&c).cloned().unwrap_or_default()
    }

    /// Constants carrying the concept name `a`.
    pub fn members_of(&self, a: Sym) -> &[Sym] {
        self.members.get(&a).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn fact_count(&self) -> usize {
        self.unary.len() + self.binary.len()
    }

    pub fn sig(&self) -> Signature {
        let mut sig = Signature::default();
        for (p, _) in &self.unary {
            if let UnaryPred::Name(a) = p {
                sig.concepts.insert(*a);
            }
        }
        for (r, _, _) in &self.binary {
            sig.roles.insert(*r);
        }
        sig
    }

    /// All facts of `self` are facts of `other`.
    pub fn subset_of(&self, other: &Database) -> bool {
        self.unary_set.is_subset(&other.unary_set)
            && self.binary_set.is_subset(&other.binary_set)
    }

    /// Restriction to the given constants.
    pub fn restrict(&self, keep: &HashSet<Sym>) -> Database {
        Database::new(
            self.unary
                .iter()
                .filter(|(_, c)| keep.contains(c))
                .copied()
                .collect(),
            self.binary
                .iter()
                .filter(|(_, c, d)| keep.contains(c) && keep.contains(d))
                .copied()
                .collect(),
            self.nulls.intersection(keep).copied().collect(),
        )
    }
}
