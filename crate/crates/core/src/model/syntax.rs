use std::collections::BTreeSet;

use super::vocab::{Sym, Vocab};

/// A role: a role name or its inverse. Inversion is an involution.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Role {
    pub name: Sym,
    pub inverted: bool,
}

impl Role {
    pub fn new(name: Sym) -> Self {
        Role { name, inverted: false }
    }

    pub fn inv(name: Sym) -> Self {
        Role { name, inverted: true }
    }

    pub fn inverse(self) -> Self {
        Role { name: self.name, inverted: !self.inverted }
    }
}

/// ELI concept: `C, D ::= A | C ⊓ D | ∃R.C`, plus ⊤.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Concept {
    Top,
    Name(Sym),
    Conj(Box<Concept>, Box<Concept>),
    Exists(Role, Box<Concept>),
}

impl Concept {
    pub fn name(s: Sym) -> Self {
        Concept::Name(s)
    }

    pub fn and(a: Concept, b: Concept) -> Self {
        Concept::Conj(Box::new(a), Box::new(b))
    }

    pub fn exists(r: Role, c: Concept) -> Self {
        Concept::Exists(r, Box::new(c))
    }

    fn collect_sig(&self, concepts: &mut BTreeSet<Sym>, roles: &mut BTreeSet<Sym>) {
        match self {
            Concept::Top => {}
            Concept::Name(a) => {
                concepts.insert(*a);
            }
            Concept::Conj(a, b) => {
                a.collect_sig(concepts, roles);
                b.collect_sig(concepts, roles);
            }
            Concept::Exists(r, c) => {
                roles.insert(r.name);
                c.collect_sig(concepts, roles);
            }
        }
    }
}

/// Signature: the concept and role names occurring in a syntactic object.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Signature {
    pub concepts: BTreeSet<Sym>,
    pub roles: BTreeSet<Sym>,
}

impl Signature {
    pub fn union(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.union(&other.concepts).copied().collect(),
            roles: self.roles.union(&other.roles).copied().collect(),
        }
    }

    pub fn intersect(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.intersection(&other.concepts).copied().collect(),
            roles: self.roles.intersection(&other.roles).copied().collect(),
        }
    }

    pub fn contains_concept(&self, a: Sym) -> bool {
        self.concepts.contains(&a)
    }

    pub fn contains_role(&self, r: Sym) -> bool {
        self.roles.contains(&r)
    }
}

/// An ELIHF ontology: concept inclusions, role inclusions and functionality
/// assertions, in declaration order.
#[derive(Clone, Default, PartialEq, Debug)]
pub struct Ontology {
    pub cis: Vec<(Concept, Concept)>,
    pub ris: Vec<(Role, Role)>,
    pub funcs: Vec<Role>,
    pub normalized: bool,
}

/// Concept inclusions of a normalized ontology. `A ⊑ B` counts as the
/// one-conjunct case of `A₁ ⊓ A₂ ⊑ A`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalCi {
    /// ⊤ ⊑ A
    TopSub(Sym),
    /// A₁ ⊓ A₂ ⊑ A (A₁ = A₂ encodes the unary case)
    ConjSub(Sym, Sym, Sym),
    /// A₁ ⊑ ∃R.A₂
    SubExists(Sym, Role, Sym),
    /// ∃R.A₁ ⊑ A₂
    ExistsSub(Role, Sym, Sym),
}

#[derive(thiserror::Error, Debug)]
#[error("ontology is not in normal form: {0}")]
pub struct NotNormalized(pub String);

impl Ontology {
    pub fn sig(&self) -> Signature {
        let mut sig = Signature::default();
        for (l, r) in &self.cis {
            l.collect_sig(&mut sig.concepts, &mut sig.roles);
            r.collect_sig(&mut sig.concepts, &mut sig.roles);
        }
        for (r, s) in &self.ris {
            sig.roles.insert(r.name);
            sig.roles.insert(s.name);
        }
        for f in &self.funcs {
            sig.roles.insert(f.name);
        }
        sig
    }

    /// The CI list of a normalized ontology as shape-checked views.
    pub fn normal_cis(&self) -> Result<Vec<NormalCi>, NotNormalized> {
        let mut out = Vec::with_capacity(self.cis.len());
        for (lhs, rhs) in &self.cis {
            let ci = match (lhs, rhs) {
                (Concept::Top, Concept::Name(a)) => NormalCi::TopSub(*a),
                (Concept::Name(a), Concept::Name(b)) => NormalCi::ConjSub(*a, *a, *b),
                (Concept::Conj(a, b), Concept::Name(c)) => match (a.as_ref(), b.as_ref()) {
                    (Concept::Name(a), Concept::Name(b)) => NormalCi::ConjSub(*a, *b, *c),
                    _ => return Err(NotNormalized(format!("{lhs:?} sub {rhs:?}"))),
                },
                (Concept::Name(a), Concept::Exists(r, c)) => match c.as_ref() {
                    Concept::Name(b) => NormalCi::SubExists(*a, *r, *b),
                    _ => return Err(NotNormalized(format!("{lhs:?} sub {rhs:?}"))),
                },
                (Concept::Exists(r, c), Concept::Name(b)) => match c.as_ref() {
                    Concept::Name(a) => NormalCi::ExistsSub(*r, *a, *b),
                    _ => return Err(NotNormalized(format!("{lhs:?} sub {rhs:?}"))),
                },
                _ => return Err(NotNormalized(format!("{lhs:?} sub {rhs:?}"))),
            };
            out.push(ci);
        }
        Ok(out)
    }
}

fn is_normal_ci(lhs: &Concept, rhs: &Concept) -> bool {
    matches!(
        (lhs, rhs),
        (Concept::Top, Concept::Name(_)) | (Concept::Name(_), Concept::Name(_))
    ) || match (lhs, rhs) {
        (Concept::Conj(a, b), Concept::Name(_)) => {
            matches!((a.as_ref(), b.as_ref()), (Concept::Name(_), Concept::Name(_)))
        }
        (Concept::Name(_), Concept::Exists(_, c)) => matches!(c.as_ref(), Concept::Name(_)),
        (Concept::Exists(_, c), Concept::Name(_)) => matches!(c.as_ref(), Concept::Name(_)),
        _ => false,
    }
}

/// Converts an ontology into normal form. Certain answers of OMQs over the
/// original signature are preserved; fresh names use the reserved `_N`
/// prefix. Already-normal CIs are kept verbatim, so the operation is
/// idempotent.
pub fn normalize(ont: &Ontology, vocab: &mut Vocab) -> Ontology {
    let mut out = Ontology {
        cis: Vec::new(),
        ris: ont.ris.clone(),
        funcs: ont.funcs.clone(),
        normalized: true,
    };
    for (lhs, rhs) in &ont.cis {
        norm_ci(lhs.clone(), rhs.clone(), vocab, &mut out.cis);
    }
    out
}

fn norm_ci(lhs: Concept, rhs: Concept, vocab: &mut Vocab, out: &mut Vec<(Concept, Concept)>) {
    if is_normal_ci(&lhs, &rhs) {
        out.push((lhs, rhs));
        return;
    }
    match rhs {
        // C ⊑ ⊤ is a tautology.
        Concept::Top => {}
        Concept::Conj(a, b) => {
            norm_ci(lhs.clone(), *a, vocab, out);
            norm_ci(lhs, *b, vocab, out);
        }
        Concept::Exists(r, c) => {
            let lhs_name = lhs_to_name(lhs, vocab, out);
            let succ = match *c {
                Concept::Name(a) => a,
                other => {
                    let x = vocab.fresh_concept();
                    norm_ci(Concept::Name(x), other, vocab, out);
                    x
                }
            };
            out.push((Concept::Name(lhs_name), Concept::exists(r, Concept::Name(succ))));
        }
        Concept::Name(b) => match lhs {
            Concept::Conj(l, r) => {
                let nl = lhs_to_name(*l, vocab, out);
                let nr = lhs_to_name(*r, vocab, out);
                out.push((
                    Concept::and(Concept::Name(nl), Concept::Name(nr)),
                    Concept::Name(b),
                ));
            }
            Concept::Exists(role, c) => {
                let nc = lhs_to_name(*c, vocab, out);
                out.push((
                    Concept::exists(role, Concept::Name(nc)),
                    Concept::Name(b),
                ));
            }
            lhs => {
                let name = lhs_to_name(lhs, vocab, out);
                out.push((Concept::Name(name), Concept::Name(b)));
            }
        },
    }
}

/// Reduces an arbitrary left-hand side to a concept name, emitting auxiliary
/// CIs that derive the name wherever the original concept holds.
fn lhs_to_name(lhs: Concept, vocab: &mut Vocab, out: &mut Vec<(Concept, Concept)>) -> Sym {
    match lhs {
        Concept::Name(a) => a,
        Concept::Top => {
            let x = vocab.fresh_concept();
            out.push((Concept::Top, Concept::Name(x)));
            x
        }
        Concept::Conj(a, b) => {
            let na = lhs_to_name(*a, vocab, out);
            let nb = lhs_to_name(*b, vocab, out);
            let x = vocab.fresh_concept();
            out.push((
                Concept::and(Concept::Name(na), Concept::Name(nb)),
                Concept::Name(x),
            ));
            x
        }
        Concept::Exists(r, c) => {
            let nc = lhs_to_name(*c, vocab, out);
            let x = vocab.fresh_concept();
            out.push((
                Concept::exists(r, Concept::Name(nc)),
                Concept::Name(x),
            ));
            x
        }
    }
}
