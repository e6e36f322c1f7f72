//! Independent brute-force references: certain answers by backtracking
//! homomorphism search over a deeply unfolded universal model built on the
//! naive chase, definition-level partial answers, the greatest simulation,
//! and plain graph/matrix brute force. None of this shares evaluation code
//! with the enumeration engine.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::chase::{find_clash, naive_chase, Unsatisfiable};
use crate::model::database::Database;
use crate::model::query::Cq;
use crate::model::syntax::Role;
use crate::model::vocab::{Sym, Vocab};
use crate::reasoner::Reasoner;
use crate::umodel::{NullOrigin, UniversalModel};

/// Exhaustive backtracking homomorphism enumeration. Calls `emit` for every
/// homomorphism; enumeration stops when `emit` returns `false`.
pub fn enumerate_homs(
    q: &Cq,
    db: &Database,
    fixed: &HashMap<Sym, Sym>,
    emit: &mut dyn FnMut(&HashMap<Sym, Sym>) -> bool,
) {
    // Order variables so each is constrained by a placed one if possible.
    let mut order: Vec<Sym> = Vec::new();
    let mut placed: HashSet<Sym> = fixed.keys().copied().collect();
    let mut rest: Vec<Sym> = q.vars().iter().filter(|v| !placed.contains(v)).copied().collect();
    while !rest.is_empty() {
        let pos = rest
            .iter()
            .position(|&v| {
                q.role_atoms
                    .iter()
                    .any(|&(_, x, y)| (x == v && placed.contains(&y)) || (y == v && placed.contains(&x)))
            })
            .unwrap_or(0);
        let v = rest.remove(pos);
        placed.insert(v);
        order.push(v);
    }
    let mut assignment: HashMap<Sym, Sym> = fixed.clone();
    if !check_assignment(q, db, &assignment) {
        return;
    }
    rec(q, db, &order, 0, &mut assignment, emit);
}

fn rec(
    q: &Cq,
    db: &Database,
    order: &[Sym],
    i: usize,
    assignment: &mut HashMap<Sym, Sym>,
    emit: &mut dyn FnMut(&HashMap<Sym, Sym>) -> bool,
) -> bool {
    if i == order.len() {
        return emit(assignment);
    }
    let v = order[i];
    let candidates = candidates_for(q, db, v, assignment);
    for c in candidates {
        assignment.insert(v, c);
        if check_var(q, db, v, assignment) && !rec(q, db, order, i + 1, assignment, emit) {
            assignment.remove(&v);
            return false;
        }
        assignment.remove(&v);
    }
    true
}

fn candidates_for(
    q: &Cq,
    db: &Database,
    v: Sym,
    assignment: &HashMap<Sym, Sym>,
) -> Vec<Sym> {
    // Prefer a role constraint against a placed neighbor, then a concept
    // atom, then the whole domain.
    for &(r, x, y) in &q.role_atoms {
        if x == v && x != y {
            if let Some(&c) = assignment.get(&y) {
                return db.successors(c, Role::inv(r)).to_vec();
            }
        }
        if y == v && x != y {
            if let Some(&c) = assignment.get(&x) {
                return db.successors(c, Role::new(r)).to_vec();
            }
        }
    }
    for &(a, x) in &q.concept_atoms {
        if x == v {
            return db.members_of(a).to_vec();
        }
    }
    db.adom().to_vec()
}

/// Checks all atoms whose variables are fully assigned and involve `v`.
fn check_var(q: &Cq, db: &Database, v: Sym, assignment: &HashMap<Sym, Sym>) -> bool {
    for &(a, x) in &q.concept_atoms {
        if x == v && !db.has_concept(a, assignment[&x]) {
            return false;
        }
    }
    for &(r, x, y) in &q.role_atoms {
        if x != v && y != v {
            continue;
        }
        if let (Some(&cx), Some(&cy)) = (assignment.get(&x), assignment.get(&y)) {
            if !db.has_role(Role::new(r), cx, cy) {
                return false;
            }
        }
    }
    true
}

fn check_assignment(q: &Cq, db: &Database, assignment: &HashMap<Sym, Sym>) -> bool {
    for &(a, x) in &q.concept_atoms {
        if let Some(&c) = assignment.get(&x) {
            if !db.has_concept(a, c) {
                return false;
            }
        }
    }
    for &(r, x, y) in &q.role_atoms {
        if let (Some(&cx), Some(&cy)) = (assignment.get(&x), assignment.get(&y)) {
            if !db.has_role(Role::new(r), cx, cy) {
                return false;
            }
        }
    }
    true
}

pub fn exists_hom(q: &Cq, db: &Database, fixed: &HashMap<Sym, Sym>) -> bool {
    let mut found = false;
    enumerate_homs(q, db, fixed, &mut |_| {
        found = true;
        false
    });
    found
}

/// All distinct answer tuples of `q` over `db` (values may be nulls).
pub fn all_answers(q: &Cq, db: &Database) -> BTreeSet<Vec<Sym>> {
    let mut out = BTreeSet::new();
    enumerate_homs(q, db, &HashMap::new(), &mut |h| {
        out.insert(q.answer_vars.iter().map(|v| h[v]).collect());
        true
    });
    out
}

/// A deeply unfolded universal model over the naive chase: traces to depth
/// `|var(q)| + K` with `K` the number of distinct requirement kinds, which
/// makes closure copies unnecessary for queries with at most `|var(q)|`
/// variables.
pub fn deep_model(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    n_vars: usize,
) -> Result<UniversalModel, Unsatisfiable> {
    let base = naive_chase(reasoner, db);
    if find_clash(reasoner, &base).is_some() {
        return Err(Unsatisfiable);
    }
    let kinds = requirement_kind_count(reasoner, &base);
    let depth = n_vars + kinds + 1;
    let mut model = crate::umodel::build_universal(reasoner, vocab, &base, depth)?;
    model.trace_depth = depth;
    Ok(model)
}

fn requirement_kind_count(reasoner: &Reasoner, base: &Database) -> usize {
    let known = reasoner.known_concepts().clone();
    let mut kinds: HashSet<(Vec<Role>, Vec<Sym>)> = HashSet::new();
    let mut stack: Vec<BTreeSet<Sym>> = base
        .adom()
        .iter()
        .map(|&c| base.concepts_of(c).intersection(&known).copied().collect())
        .collect();
    let mut seen: HashSet<Vec<Sym>> = HashSet::new();
    while let Some(label) = stack.pop() {
        if !seen.insert(label.iter().copied().collect()) {
            continue;
        }
        for req in reasoner.maximal_succs(&label) {
            kinds.insert((
                req.roles.iter().copied().collect(),
                req.target.iter().copied().collect(),
            ));
            stack.push(req.target);
        }
    }
    kinds.len()
}

/// Certain answers `Q(D)` by homomorphism search over the deep model,
/// restricted to constant tuples.
pub fn brute_answers(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    q: &Cq,
) -> Result<BTreeSet<Vec<Sym>>, Unsatisfiable> {
    let model = deep_model(reasoner, vocab, db, q.vars().len())?;
    Ok(all_answers(q, &model.db)
        .into_iter()
        .filter(|t| t.iter().all(|c| !model.db.is_null(*c)))
        .collect())
}

/// A wildcard position pattern used by the brute-force partial-answer
/// search: a tuple over constants and wildcard indices (0 = the single
/// wildcard `∗`; in multi mode, 1-based indices with prefix numbering).
pub type RawWildcard = Vec<Result<Sym, usize>>;

#[derive(thiserror::Error, Debug)]
pub enum OracleError {
    #[error(transparent)]
    Unsatisfiable(#[from] Unsatisfiable),
    #[error("instance too large for the brute-force oracle")]
    InstanceTooLarge,
}

/// Is the given wildcard tuple a partial answer? Builds `q'` by quantifying
/// wildcard positions (multi mode: one shared variable per wildcard index)
/// and tests the constant part over the model.
pub fn is_partial_on_model(
    q: &Cq,
    model: &UniversalModel,
    tuple: &RawWildcard,
) -> bool {
    assert_eq!(tuple.len(), q.answer_vars.len());
    // identify answer variables sharing a multi-wildcard index
    let mut rep: HashMap<usize, Sym> = HashMap::new();
    let mut subst: HashMap<Sym, Sym> = HashMap::new();
    let mut fixed: HashMap<Sym, Sym> = HashMap::new();
    for (i, entry) in tuple.iter().enumerate() {
        let v = q.answer_vars[i];
        match entry {
            Ok(c) => {
                fixed.insert(v, *c);
            }
            Err(0) => {} // independent wildcard: leave quantified
            Err(j) => {
                let r = *rep.entry(*j).or_insert(v);
                if r != v {
                    subst.insert(v, r);
                }
            }
        }
    }
    let apply = |v: Sym| *subst.get(&v).unwrap_or(&v);
    let q2 = Cq::new(
        Vec::new(),
        q.concept_atoms.iter().map(|&(a, v)| (a, apply(v))).collect(),
        q.role_atoms.iter().map(|&(r, x, y)| (r, apply(x), apply(y))).collect(),
    );
    let fixed: HashMap<Sym, Sym> = fixed.into_iter().map(|(v, c)| (apply(v), c)).collect();
    exists_hom(&q2, &model.db, &fixed)
}

/// All partial answers by definition: every wildcard tuple over
/// `adom(D) ∪ {∗}` (or canonical multi-wildcard tuples) that passes
/// [`is_partial_on_model`].
pub fn brute_partial_answers(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    q: &Cq,
    multi: bool,
    budget: usize,
) -> Result<BTreeSet<RawWildcard>, OracleError> {
    let k = q.answer_vars.len();
    let space = (db.adom().len() + k + 1).checked_pow(k as u32).unwrap_or(usize::MAX);
    if space > budget {
        return Err(OracleError::InstanceTooLarge);
    }
    let model = deep_model(reasoner, vocab, db, q.vars().len())?;
    let mut out = BTreeSet::new();
    let mut tuple: RawWildcard = Vec::with_capacity(k);
    fn rec(
        q: &Cq,
        model: &UniversalModel,
        adom: &[Sym],
        multi: bool,
        k: usize,
        max_wc: usize,
        tuple: &mut RawWildcard,
        out: &mut BTreeSet<RawWildcard>,
    ) {
        if tuple.len() == k {
            if is_partial_on_model(q, model, tuple) {
                out.insert(tuple.clone());
            }
            return;
        }
        for &c in adom {
            tuple.push(Ok(c));
            rec(q, model, adom, multi, k, max_wc, tuple, out);
            tuple.pop();
        }
        if multi {
            // prefix numbering: next index at most max so far + 1
            for j in 1..=max_wc + 1 {
                tuple.push(Err(j));
                rec(q, model, adom, multi, k, max_wc.max(j), tuple, out);
                tuple.pop();
            }
        } else {
            tuple.push(Err(0));
            rec(q, model, adom, multi, k, max_wc, tuple, out);
            tuple.pop();
        }
    }
    let adom: Vec<Sym> = model.base.adom().to_vec();
    rec(&q.clone(), &model, &adom, multi, k, 0, &mut tuple, &mut out);
    Ok(out)
}

fn raw_preceq(a: &RawWildcard, b: &RawWildcard) -> bool {
    // a ≼ b: b is less informative.
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (_, Err(_)) => {}
            (Ok(ca), Ok(cb)) if ca == cb => {}
            _ => return false,
        }
    }
    // multi condition: equal wildcards in b force equal entries in a
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if let (Err(wi), Err(wj)) = (&b[i], &b[j]) {
                if wi == wj && *wi > 0 && a[i] != a[j] {
                    return false;
                }
            }
        }
    }
    true
}

/// Definition-level minimal partial answers: all partial answers with no
/// strictly more informative partial answer.
pub fn brute_minimal_partial(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    q: &Cq,
    multi: bool,
    budget: usize,
) -> Result<BTreeSet<RawWildcard>, OracleError> {
    let all = brute_partial_answers(reasoner, vocab, db, q, multi, budget)?;
    Ok(all
        .iter()
        .filter(|t| {
            !all.iter().any(|s| *s != **t && raw_preceq(s, t))
        })
        .cloned()
        .collect())
}

/// The greatest simulation between two databases, by fixpoint refinement.
pub fn greatest_simulation(i: &Database, j: &Database) -> HashSet<(Sym, Sym)> {
    let mut sim: HashSet<(Sym, Sym)> = HashSet::new();
    for &c in i.adom() {
        let needs = i.concepts_of(c);
        for &d in j.adom() {
            if needs.is_subset(&j.concepts_of(d)) {
                sim.insert((c, d));
            }
        }
    }
    let roles: BTreeSet<Sym> = i.binary_facts().iter().map(|&(r, _, _)| r).collect();
    loop {
        let mut removed = Vec::new();
        for &(c, d) in &sim {
            'check: for &r in &roles {
                for dir in [Role::new(r), Role::inv(r)] {
                    for &c2 in i.successors(c, dir) {
                        let ok = j
                            .successors(d, dir)
                            .iter()
                            .any(|&d2| sim.contains(&(c2, d2)));
                        if !ok {
                            removed.push((c, d));
                            break 'check;
                        }
                    }
                }
            }
        }
        if removed.is_empty() {
            return sim;
        }
        for pair in removed {
            sim.remove(&pair);
        }
    }
}

/// Sim1/Sim2 hold for the relation between the two databases.
pub fn is_simulation(sim: &HashSet<(Sym, Sym)>, i: &Database, j: &Database) -> bool {
    for &(c, d) in sim {
        if !i.concepts_of(c).is_subset(&j.concepts_of(d)) {
            return false;
        }
        for &(r, x, y) in i.binary_facts() {
            for (src, tgt, dir) in [(x, y, Role::new(r)), (y, x, Role::inv(r))] {
                if src == c {
                    let ok = j.successors(d, dir).iter().any(|&d2| sim.contains(&(tgt, d2)));
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn brute_triangle(edges: &[(u32, u32)]) -> bool {
    let verts: BTreeSet<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let set: HashSet<(u32, u32)> = edges
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    let vs: Vec<u32> = verts.into_iter().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if !set.contains(&(vs[i], vs[j])) {
                continue;
            }
            for l in j + 1..vs.len() {
                if set.contains(&(vs[i], vs[l])) && set.contains(&(vs[j], vs[l])) {
                    return true;
                }
            }
        }
    }
    false
}

/// `(k+1, k)`-hyperclique: some `k+1` vertices all of whose `k`-subsets are
/// hyperedges.
pub fn brute_hyperclique(vertices: &[u32], hyperedges: &[BTreeSet<u32>], k: usize) -> bool {
    let set: HashSet<&BTreeSet<u32>> = hyperedges.iter().collect();
    let n = vertices.len();
    if n < k + 1 {
        return false;
    }
    let mut idx: Vec<usize> = (0..k + 1).collect();
    loop {
        let verts: Vec<u32> = idx.iter().map(|&i| vertices[i]).collect();
        let all_in = subsets_of_size(&verts, k)
            .into_iter()
            .all(|s| set.contains(&s));
        if all_in {
            return true;
        }
        // advance combination
        let mut i = k + 1;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < i + n - (k + 1) {
                idx[i] += 1;
                for j in i + 1..k + 1 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return false;
            }
        }
    }
}

fn subsets_of_size(items: &[u32], k: usize) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Boolean matrix product over pair lists.
pub fn brute_mat_product(m1: &[(u32, u32)], m2: &[(u32, u32)]) -> BTreeSet<(u32, u32)> {
    let mut by_mid: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(c, b) in m2 {
        by_mid.entry(c).or_default().push(b);
    }
    let mut out = BTreeSet::new();
    for &(a, c) in m1 {
        if let Some(bs) = by_mid.get(&c) {
            for &b in bs {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Model check: all CIs hold at the given elements, all role inclusions
/// and functionality assertions hold everywhere. Returns violation notes.
pub fn check_model(
    reasoner: &Reasoner,
    db: &Database,
    ci_elements: &HashSet<Sym>,
    vocab: &Vocab,
) -> Vec<String> {
    use crate::model::syntax::NormalCi;
    let mut bad = Vec::new();
    for ci in reasoner.normal_cis() {
        match ci {
            NormalCi::TopSub(a) => {
                for &c in db.adom() {
                    if ci_elements.contains(&c) && !db.has_concept(a, c) {
                        bad.push(format!("top sub {} fails at {}", vocab.name(a), vocab.name(c)));
                    }
                }
            }
            NormalCi::ConjSub(a1, a2, b) => {
                for &c in db.adom() {
                    if ci_elements.contains(&c)
                        && db.has_concept(a1, c)
                        && db.has_concept(a2, c)
                        && !db.has_concept(b, c)
                    {
                        bad.push(format!("conjunction CI fails at {}", vocab.name(c)));
                    }
                }
            }
            NormalCi::SubExists(a, r, b) => {
                for c in db.members_of(a).to_vec() {
                    if !ci_elements.contains(&c) {
                        continue;
                    }
                    let ok = db.successors(c, r).iter().any(|&d| db.has_concept(b, d));
                    if !ok {
                        bad.push(format!(
                            "{} sub exists {}.{} fails at {}",
                            vocab.name(a),
                            vocab.name(r.name),
                            vocab.name(b),
                            vocab.name(c)
                        ));
                    }
                }
            }
            NormalCi::ExistsSub(r, a, b) => {
                for &c in db.adom() {
                    if !ci_elements.contains(&c) || db.has_concept(b, c) {
                        continue;
                    }
                    let fires = db.successors(c, r).iter().any(|&d| db.has_concept(a, d));
                    if fires {
                        bad.push(format!("exists CI fails at {}", vocab.name(c)));
                    }
                }
            }
        }
    }
    for (r, s) in reasoner.declared_ris() {
        for &(rn, c, d) in db.binary_facts() {
            let fact_roles = [(Role::new(rn), c, d), (Role::inv(rn), d, c)];
            for (fr, x, y) in fact_roles {
                if fr == r && !db.has_role(s, x, y) {
                    bad.push(format!(
                        "role inclusion {} sub {} fails",
                        vocab.name(r.name),
                        vocab.name(s.name)
                    ));
                }
            }
        }
    }
    for f in reasoner.asserted_funcs() {
        for &c in db.adom() {
            let distinct: HashSet<Sym> = db.successors(c, f).iter().copied().collect();
            if distinct.len() > 1 {
                bad.push(format!(
                    "functionality of {} fails at {}",
                    vocab.name(f.name),
                    vocab.name(c)
                ));
            }
        }
    }
    bad
}

/// Model-checks a universal model: functionality everywhere, CIs at
/// elements of trace depth below the construction depth.
pub fn check_universal_model(
    reasoner: &Reasoner,
    model: &UniversalModel,
    vocab: &Vocab,
) -> Vec<String> {
    let mut inner: HashSet<Sym> = model.base_adom.iter().copied().collect();
    for (&null, origin) in &model.provenance {
        if let NullOrigin::Step { depth, .. } = origin {
            if *depth < model.trace_depth {
                inner.insert(null);
            }
        }
    }
    check_model(reasoner, &model.db, &inner, vocab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_database, parse_ontology, parse_query, Vocab};

    fn setup(ont: &str, db: &str, q: &str) -> (Vocab, Reasoner, Database, Cq) {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(&mut vocab, ont).unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        let db = parse_database(&mut vocab, db).unwrap();
        let q = parse_query(&mut vocab, q).unwrap();
        (vocab, r, db, q)
    }

    #[test]
    fn intro_example_has_no_complete_answers() {
        let (mut vocab, r, db, q) = setup(
            "Researcher sub exists worksFor . University\nUniversity sub Academia",
            "Researcher(mary).",
            "q(x,y) :- worksFor(x,y), Academia(y).",
        );
        let answers = brute_answers(&r, &mut vocab, &db, &q).unwrap();
        assert!(answers.is_empty());
    }

    #[test]
    fn single_atom_answer() {
        let (mut vocab, r, db, q) = setup("A sub A", "A(a).", "q(x) :- A(x).");
        let a = vocab.lookup("a").unwrap();
        let answers = brute_answers(&r, &mut vocab, &db, &q).unwrap();
        assert_eq!(answers, BTreeSet::from([vec![a]]));
    }

    #[test]
    fn intro_example_minimal_partial() {
        let (mut vocab, r, db, q) = setup(
            "Researcher sub exists worksFor . University\nUniversity sub Academia",
            "Researcher(mary).",
            "q(x,y) :- worksFor(x,y), Academia(y).",
        );
        let mary = vocab.lookup("mary").unwrap();
        let minimal = brute_minimal_partial(&r, &mut vocab, &db, &q, false, 100_000).unwrap();
        assert_eq!(minimal, BTreeSet::from([vec![Ok(mary), Err(0)]]));
    }

    #[test]
    fn example_one_multi_wildcards() {
        let (mut vocab, r, db, q) = setup(
            "Company sub exists hasEmployee . Person\n\
             TechCompany sub Company\nCarCompany sub Company\n\
             TechFactory sub exists hasOwner . TechCompany\n\
             CarFactory sub exists hasOwner . CarCompany\n\
             func(hasOwner)",
            "CarFactory(gigafactory1).\nTechFactory(gigafactory1).",
            "q(x,y,z) :- Person(x), hasEmployee(y,x), TechCompany(y), hasEmployee(z,x), CarCompany(z).",
        );
        let minimal = brute_minimal_partial(&r, &mut vocab, &db, &q, true, 100_000).unwrap();
        assert_eq!(minimal, BTreeSet::from([vec![Err(1), Err(2), Err(2)]]));
    }

    #[test]
    fn example_one_extended_multi_wildcards() {
        let (mut vocab, r, db, q) = setup(
            "Company sub exists hasEmployee . Person\n\
             TechCompany sub Company\nCarCompany sub Company\n\
             TechFactory sub exists hasOwner . TechCompany\n\
             CarFactory sub exists hasOwner . CarCompany\n\
             func(hasOwner)",
            "CarFactory(gigafactory1).\nTechFactory(gigafactory1).\n\
             hasOwner(gigafactory1,tesla).",
            "q(x,y,z) :- Person(x), hasEmployee(y,x), TechCompany(y), hasEmployee(z,x), CarCompany(z).",
        );
        let tesla = vocab.lookup("tesla").unwrap();
        let minimal = brute_minimal_partial(&r, &mut vocab, &db, &q, true, 100_000).unwrap();
        assert_eq!(minimal, BTreeSet::from([vec![Err(1), Ok(tesla), Ok(tesla)]]));
    }

    #[test]
    fn simulation_identity() {
        let (_, _, db, _) = setup("A sub A", "A(a).\nr(a,b).", "q(x) :- A(x).");
        let sim = greatest_simulation(&db, &db);
        for &c in db.adom() {
            assert!(sim.contains(&(c, c)));
        }
        assert!(is_simulation(&sim, &db, &db));
    }

    #[test]
    fn triangle_and_product_brute_force() {
        assert!(brute_triangle(&[(1, 2), (2, 3), (1, 3)]));
        assert!(!brute_triangle(&[(1, 2), (2, 3), (3, 4), (4, 1)]));
        let prod = brute_mat_product(&[(1, 2)], &[(2, 3)]);
        assert_eq!(prod, BTreeSet::from([(1, 3)]));
        let e: Vec<BTreeSet<u32>> = vec![
            BTreeSet::from([1, 2, 3]),
            BTreeSet::from([1, 2, 4]),
            BTreeSet::from([1, 3, 4]),
            BTreeSet::from([2, 3, 4]),
        ];
        assert!(brute_hyperclique(&[1, 2, 3, 4], &e, 3));
        assert!(!brute_hyperclique(&[1, 2, 3, 4], &e[..3].to_vec(), 3));
    }

    #[test]
    fn model_check_accepts_universal_model() {
        let (mut vocab, r, db, q) = setup(
            "A sub exists r . B\nB sub exists inv(s) . A\n(exists r . B) sub C\nfunc(r)",
            "A(a).\nr(a,b).\nB(b).",
            "q(x) :- A(x).",
        );
        let model = deep_model(&r, &mut vocab, &db, q.vars().len()).unwrap();
        let bad = check_universal_model(&r, &model, &vocab);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
