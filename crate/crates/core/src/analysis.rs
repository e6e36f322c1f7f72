//! Functional paths, the FA-extension `q⁺`, acyclicity and free-connex
//! tests, and the enumerability classification of an OMQ.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::model::query::Cq;
use crate::model::syntax::Role;
use crate::model::vocab::{Sym, Vocab};
use crate::reasoner::Reasoner;

/// The atom of `q` an extended atom originates from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AtomOrigin {
    Concept(Sym, Sym),
    Role(Sym, Sym, Sym),
}

/// A step of a functional path: `h(var)` is the unique `role`-successor of
/// `h(src)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExtStep {
    pub var: Sym,
    pub src: Sym,
    pub role: Role,
}

/// One atom `R'(ȳ⁺)` of the FA-extension, with the originating atom and the
/// functional steps that derive the added variables from the base ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtAtom {
    pub origin: AtomOrigin,
    pub vars: Vec<Sym>,
    pub steps: Vec<ExtStep>,
}

/// The FA-extension `q⁺`: one fresh relation symbol per base atom, each
/// atom's variable tuple closed under functional-path reachability. Always
/// self-join free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedQuery {
    pub base: Cq,
    pub answer_vars: Vec<Sym>,
    pub atoms: Vec<ExtAtom>,
}

impl ExtendedQuery {
    /// Fresh symbol names and arities, `<name>'<k>` per base atom.
    pub fn arity_table(&self, vocab: &Vocab) -> Vec<(String, usize)> {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let base = match a.origin {
                    AtomOrigin::Concept(c, _) => vocab.name(c),
                    AtomOrigin::Role(r, _, _) => vocab.name(r),
                };
                (format!("{base}'{i}"), a.vars.len())
            })
            .collect()
    }

    pub fn var_sets(&self) -> Vec<BTreeSet<Sym>> {
        self.atoms.iter().map(|a| a.vars.iter().copied().collect()).collect()
    }
}

/// Directed functional step relation of `q`: `u → v` when some atom gives a
/// role `R` with `R(u,v) ∈ q` and `O ⊨ func(R)`, reading `r(v,u)` as
/// `r⁻(u,v)`.
pub fn functional_steps(reasoner: &Reasoner, q: &Cq) -> Vec<(Sym, Sym, Role)> {
    let mut steps = Vec::new();
    for &(r, x, y) in &q.role_atoms {
        if x != y {
            if reasoner.entails_func(Role::new(r)) {
                steps.push((x, y, Role::new(r)));
            }
            if reasoner.entails_func(Role::inv(r)) {
                steps.push((y, x, Role::inv(r)));
            }
        }
    }
    steps
}

/// `x̄⁺`: the input tuple followed by all newly reachable variables on
/// functional paths, in the fixed (first-occurrence) variable order.
/// Idempotent.
pub fn functional_closure(reasoner: &Reasoner, q: &Cq, xs: &[Sym]) -> Vec<Sym> {
    let steps = functional_steps(reasoner, q);
    let mut reached: HashSet<Sym> = xs.iter().copied().collect();
    loop {
        let mut grew = false;
        for &(u, v, _) in &steps {
            if reached.contains(&u) && reached.insert(v) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Sym> = xs.to_vec();
    for &v in q.vars() {
        if reached.contains(&v) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Answer tuple choice for the FA-extension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AnswerMode {
    /// `q⁺(x̄⁺)` — complete-answer enumeration.
    Extended,
    /// `q⁺(x̄)` — partial-answer enumeration.
    Original,
}

pub fn fa_extension(reasoner: &Reasoner, q: &Cq, mode: AnswerMode) -> ExtendedQuery {
    let steps = functional_steps(reasoner, q);
    let origins: Vec<AtomOrigin> = q
        .concept_atoms
        .iter()
        .map(|&(a, v)| AtomOrigin::Concept(a, v))
        .chain(q.role_atoms.iter().map(|&(r, x, y)| AtomOrigin::Role(r, x, y)))
        .collect();
    let mut atoms = Vec::new();
    for origin in origins {
        let base_vars: Vec<Sym> = match origin {
            AtomOrigin::Concept(_, v) => vec![v],
            AtomOrigin::Role(_, x, y) => vec![x, y],
        };
        let closure = functional_closure(reasoner, q, &base_vars);
        let mut vars = base_vars.clone();
        let mut placed: HashSet<Sym> = base_vars.iter().copied().collect();
        let mut ext_steps = Vec::new();
        // Order the added variables so each is one functional step away
        // from an already-placed one.
        loop {
            let mut grew = false;
            for &v in &closure {
                if placed.contains(&v) {
                    continue;
                }
                if let Some(&(src, _, role)) =
                    steps.iter().find(|&&(u, w, _)| w == v && placed.contains(&u))
                {
                    placed.insert(v);
                    ext_steps.push(ExtStep { var: v, src, role });
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        for &v in &closure {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        atoms.push(ExtAtom { origin, vars, steps: ext_steps });
    }
    let answer_vars = match mode {
        AnswerMode::Extended => functional_closure(reasoner, q, &q.answer_vars),
        AnswerMode::Original => q.answer_vars.clone(),
    };
    ExtendedQuery { base: q.clone(), answer_vars, atoms }
}

/// A join tree over atom indices. For every variable, the atoms containing
/// it induce a connected subtree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JoinTree {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl JoinTree {
    /// Connected-subtree property of every variable.
    pub fn check(&self, var_sets: &[BTreeSet<Sym>]) -> bool {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut all_vars: BTreeSet<Sym> = BTreeSet::new();
        for s in var_sets {
            all_vars.extend(s.iter().copied());
        }
        for v in all_vars {
            let holders: Vec<usize> =
                (0..var_sets.len()).filter(|&i| var_sets[i].contains(&v)).collect();
            if holders.is_empty() {
                continue;
            }
            let mut reached = HashSet::from([holders[0]]);
            let mut stack = vec![holders[0]];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if var_sets.get(w).map(|s| s.contains(&v)).unwrap_or(false)
                        && reached.insert(w)
                    {
                        stack.push(w);
                    }
                }
            }
            if !holders.iter().all(|h| reached.contains(h)) {
                return false;
            }
        }
        true
    }
}

/// GYO reduction. Ties are broken by always removing the least-index ear.
/// Returns a join tree on success.
pub fn gyo(var_sets: &[BTreeSet<Sym>]) -> Option<JoinTree> {
    let n = var_sets.len();
    if n == 0 {
        return Some(JoinTree { node_count: 0, edges: Vec::new() });
    }
    let mut sets: Vec<BTreeSet<Sym>> = var_sets.to_vec();
    let mut alive: Vec<bool> = vec![true; n];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    loop {
        // Remove variables occurring in exactly one live set.
        let mut counts: HashMap<Sym, usize> = HashMap::new();
        for (i, s) in sets.iter().enumerate() {
            if alive[i] {
                for &v in s {
                    *counts.entry(v).or_insert(0) += 1;
                }
            }
        }
        let mut changed = false;
        for (i, s) in sets.iter_mut().enumerate() {
            if !alive[i] {
                continue;
            }
            let before = s.len();
            s.retain(|v| counts[v] > 1);
            changed |= s.len() != before;
        }
        // Absorb the least ear into a witness.
        let mut ear: Option<(usize, usize)> = None;
        'outer: for i in 0..n {
            if !alive[i] {
                continue;
            }
            for j in 0..n {
                if i != j && alive[j] && sets[i].is_subset(&sets[j]) {
                    ear = Some((i, j));
                    break 'outer;
                }
            }
        }
        if let Some((i, j)) = ear {
            alive[i] = false;
            tree_edges.push((i, j));
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    if survivors.len() == 1 {
        Some(JoinTree { node_count: n, edges: tree_edges })
    } else if survivors.iter().all(|&i| sets[i].is_empty()) {
        // A disconnected query whose components all reduced: chain them.
        for w in survivors.windows(2) {
            tree_edges.push((w[0], w[1]));
        }
        Some(JoinTree { node_count: n, edges: tree_edges })
    } else {
        None
    }
}

/// A CQ is acyclic iff it has a join tree.
pub fn is_acyclic(var_sets: &[BTreeSet<Sym>]) -> Option<JoinTree> {
    gyo(var_sets)
}

/// Free-connex: still acyclic after adding a head atom over the answer
/// variables. The returned tree has the head as node index
/// `var_sets.len()`.
pub fn is_free_connex(var_sets: &[BTreeSet<Sym>], answer_vars: &[Sym]) -> Option<JoinTree> {
    let mut with_head = var_sets.to_vec();
    with_head.push(answer_vars.iter().copied().collect());
    gyo(&with_head)
}

/// Primal (variable) graph: an edge between two variables co-occurring in
/// an atom.
pub fn primal_graph(var_sets: &[BTreeSet<Sym>]) -> (Vec<Sym>, HashSet<(Sym, Sym)>) {
    let mut vars: Vec<Sym> = Vec::new();
    let mut seen = HashSet::new();
    let mut edges = HashSet::new();
    for s in var_sets {
        for &v in s {
            if seen.insert(v) {
                vars.push(v);
            }
        }
        let vs: Vec<Sym> = s.iter().copied().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (a, b) = (vs[i].min(vs[j]), vs[i].max(vs[j]));
                edges.insert((a, b));
            }
        }
    }
    (vars, edges)
}

fn adjacent(edges: &HashSet<(Sym, Sym)>, a: Sym, b: Sym) -> bool {
    edges.contains(&(a.min(b), a.max(b)))
}

/// Smallest chordless cycle of length ≥ 4 in the primal graph, as a cyclic
/// vertex sequence.
pub fn find_chordless_cycle(vars: &[Sym], edges: &HashSet<(Sym, Sym)>) -> Option<Vec<Sym>> {
    let n = vars.len();
    for size in 4..=n {
        for subset in k_subsets(n, size) {
            let verts: Vec<Sym> = subset.iter().map(|&i| vars[i]).collect();
            if let Some(cycle) = induced_cycle(&verts, edges) {
                return Some(cycle);
            }
        }
    }
    None
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n || k == 0 {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance combination
        let mut i = k;
        while i > 0 {
            i -= 1;
            if cur[i] < i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// If the induced subgraph on `verts` is a single cycle, return it in walk
/// order.
fn induced_cycle(verts: &[Sym], edges: &HashSet<(Sym, Sym)>) -> Option<Vec<Sym>> {
    let deg: Vec<usize> = verts
        .iter()
        .map(|&v| verts.iter().filter(|&&w| w != v && adjacent(edges, v, w)).count())
        .collect();
    if !deg.iter().all(|&d| d == 2) {
        return None;
    }
    let mut walk = vec![verts[0]];
    let mut prev: Option<Sym> = None;
    let mut cur = verts[0];
    loop {
        let next = verts
            .iter()
            .find(|&&w| w != cur && Some(w) != prev && adjacent(edges, cur, w))
            .copied()?;
        if next == verts[0] {
            break;
        }
        walk.push(next);
        prev = Some(cur);
        cur = next;
    }
    if walk.len() == verts.len() {
        Some(walk)
    } else {
        None
    }
}

/// Smallest clique of the primal graph not covered by any atom. By the
/// size-ascending search, every proper subset of the result is covered.
/// `None` when the hypergraph is conformal.
pub fn find_uncovered_clique(
    vars: &[Sym],
    edges: &HashSet<(Sym, Sym)>,
    var_sets: &[BTreeSet<Sym>],
) -> Option<Vec<Sym>> {
    let n = vars.len();
    for size in 2..=n {
        for subset in k_subsets(n, size) {
            let verts: Vec<Sym> = subset.iter().map(|&i| vars[i]).collect();
            let clique = verts
                .iter()
                .enumerate()
                .all(|(i, &a)| verts[i + 1..].iter().all(|&b| adjacent(edges, a, b)));
            if !clique {
                continue;
            }
            let covered = var_sets.iter().any(|s| verts.iter().all(|v| s.contains(v)));
            if !covered {
                return Some(verts);
            }
        }
    }
    None
}

/// A shortest bad path in the primal graph of `q⁺`: simple, chordless, not
/// a cycle, endpoints answer variables of `q⁺(x̄⁺)`, interior quantified.
pub fn find_bad_path(
    vars: &[Sym],
    edges: &HashSet<(Sym, Sym)>,
    answer_ext: &[Sym],
) -> Option<Vec<Sym>> {
    let ans: HashSet<Sym> = answer_ext.iter().copied().collect();
    let mut best: Option<Vec<Sym>> = None;
    for &start in vars {
        if !ans.contains(&start) {
            continue;
        }
        let mut stack: Vec<Vec<Sym>> = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if path.len() >= 3 && ans.contains(&last) {
                if chordless_path(&path, edges) {
                    let better = best.as_ref().map(|b| path.len() < b.len()).unwrap_or(true);
                    if better {
                        best = Some(path.clone());
                    }
                }
                continue; // interior vertices must be quantified
            }
            if best.as_ref().map(|b| path.len() + 1 > b.len()).unwrap_or(false) {
                continue;
            }
            for &next in vars {
                if path.contains(&next) || !adjacent(edges, last, next) {
                    continue;
                }
                // only the final vertex may be an answer variable
                if ans.contains(&next) && path.len() < 2 {
                    continue;
                }
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
    }
    best
}

fn chordless_path(path: &[Sym], edges: &HashSet<(Sym, Sym)>) -> bool {
    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if adjacent(edges, path[i], path[j]) {
                return false;
            }
        }
    }
    true
}

/// The verdict record for an OMQ: eligibility for complete-answer and
/// partial-answer enumeration, plus the hardness-side diagnostics that
/// drive the reduction generators.
#[derive(Debug)]
pub struct Classification {
    pub ext: ExtendedQuery,
    pub answer_vars_ext: Vec<Sym>,
    pub qplus_acyclic: Option<JoinTree>,
    pub qplus_ext_free_connex: Option<JoinTree>,
    pub qplus_orig_free_connex: Option<JoinTree>,
    pub self_join_free: bool,
    pub connected: bool,
    pub chordal: bool,
    pub conformal: bool,
    pub chordless_cycle: Option<Vec<Sym>>,
    pub uncovered_clique: Option<Vec<Sym>>,
    pub bad_path: Option<Vec<Sym>>,
}

impl Classification {
    /// Complete answers enumerable with linear preprocessing and constant
    /// delay: `q⁺(x̄⁺)` acyclic and free-connex acyclic.
    pub fn complete_eligible(&self) -> bool {
        self.qplus_acyclic.is_some() && self.qplus_ext_free_connex.is_some()
    }

    /// Minimal partial answers enumerable with linear preprocessing and
    /// constant delay: `q⁺(x̄)` acyclic and free-connex acyclic.
    pub fn partial_eligible(&self) -> bool {
        self.qplus_acyclic.is_some() && self.qplus_orig_free_connex.is_some()
    }

    /// Conditional lower-bound statements; they apply when the query is
    /// self-join free and connected.
    pub fn hardness_notes(&self) -> Vec<&'static str> {
        let mut notes = Vec::new();
        if self.complete_eligible() && !self.partial_eligible() {
            notes.push("partial answers may be harder: q+(x) is not free-connex acyclic");
        }
        if !(self.self_join_free && self.connected) {
            return notes;
        }
        if self.qplus_acyclic.is_none() {
            if !self.chordal {
                notes.push(
                    "complete and partial answers not enumerable with constant delay \
                     unless the triangle conjecture fails",
                );
            } else if !self.conformal {
                notes.push(
                    "complete and partial answers not enumerable with constant delay \
                     unless the hyperclique conjecture fails",
                );
            }
        } else if self.qplus_ext_free_connex.is_none() {
            notes.push(
                "complete answers not enumerable with constant delay unless sparse \
                 Boolean matrix multiplication takes linear input-output time",
            );
        }
        notes
    }
}

pub fn classify(reasoner: &Reasoner, q: &Cq) -> Classification {
    let ext = fa_extension(reasoner, q, AnswerMode::Extended);
    let var_sets = ext.var_sets();
    let answer_vars_ext = ext.answer_vars.clone();
    let qplus_acyclic = is_acyclic(&var_sets);
    let qplus_ext_free_connex = is_free_connex(&var_sets, &answer_vars_ext);
    let qplus_orig_free_connex = is_free_connex(&var_sets, &q.answer_vars);
    let (vars, edges) = primal_graph(&var_sets);
    let chordless_cycle = find_chordless_cycle(&vars, &edges);
    let uncovered_clique = find_uncovered_clique(&vars, &edges, &var_sets);
    let bad_path = if qplus_acyclic.is_some() && qplus_ext_free_connex.is_none() {
        find_bad_path(&vars, &edges, &answer_vars_ext)
    } else {
        None
    };
    Classification {
        ext,
        answer_vars_ext,
        qplus_acyclic,
        qplus_ext_free_connex,
        qplus_orig_free_connex,
        self_join_free: q.is_self_join_free(),
        connected: q.is_connected(),
        chordal: chordless_cycle.is_none(),
        conformal: uncovered_clique.is_none(),
        chordless_cycle,
        uncovered_clique,
        bad_path,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_ontology, parse_query, Vocab};

    fn setup(ont: &str, q: &str) -> (Vocab, Reasoner, Cq) {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(&mut vocab, ont).unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        let q = parse_query(&mut vocab, q).unwrap();
        (vocab, r, q)
    }

    const EX2_ONT: &str = "func(inv(R2))\nfunc(inv(R3))\nfunc(R4)";
    const EX2_Q: &str = "q(x,t) :- R1(x,y), R2(y,z), R3(z,x), R4(t,y).";

    fn names(vocab: &Vocab, vs: &[Sym]) -> Vec<String> {
        vs.iter().map(|v| vocab.name(*v).to_string()).collect()
    }

    #[test]
    fn example_two_functional_closure() {
        let (vocab, r, q) = setup(EX2_ONT, EX2_Q);
        let xs = vec![vocab.lookup("x").unwrap(), vocab.lookup("t").unwrap()];
        let closure = functional_closure(&r, &q, &xs);
        // x reaches z (func(R3⁻)) and z reaches y (func(R2⁻)); t reaches y.
        assert_eq!(names(&vocab, &closure), vec!["x", "t", "y", "z"]);
        // idempotent
        assert_eq!(functional_closure(&r, &q, &closure), closure);
    }

    #[test]
    fn chain_closure() {
        let (vocab, r, q) = setup("func(r)\nfunc(s)", "q(x) :- r(x,y), s(y,z).");
        let xs = vec![vocab.lookup("x").unwrap()];
        assert_eq!(names(&vocab, &functional_closure(&r, &q, &xs)), vec!["x", "y", "z"]);
    }

    #[test]
    fn example_two_atom_extensions() {
        let (vocab, r, q) = setup(EX2_ONT, EX2_Q);
        let ext = fa_extension(&r, &q, AnswerMode::Extended);
        let got: Vec<Vec<String>> =
            ext.atoms.iter().map(|a| names(&vocab, &a.vars)).collect();
        assert_eq!(
            got,
            vec![
                vec!["x", "y", "z"],
                vec!["y", "z"],
                vec!["z", "x", "y"],
                vec!["t", "y"],
            ]
        );
    }

    #[test]
    fn example_two_verdicts() {
        let (_, r, q) = setup(EX2_ONT, EX2_Q);
        let c = classify(&r, &q);
        assert!(c.qplus_acyclic.is_some());
        assert!(c.qplus_ext_free_connex.is_some());
        assert!(c.qplus_orig_free_connex.is_none());
        assert!(c.complete_eligible());
        assert!(!c.partial_eligible());
        // the base q contains a triangle on x, y, z: not acyclic
        let base_sets: Vec<BTreeSet<Sym>> = q
            .role_atoms
            .iter()
            .map(|&(_, x, y)| BTreeSet::from([x, y]))
            .collect();
        assert!(is_acyclic(&base_sets).is_none());
    }

    #[test]
    fn single_atom_acyclic() {
        let (_, r, q) = setup("A sub A", "q(x) :- A(x).");
        let c = classify(&r, &q);
        assert!(c.qplus_acyclic.is_some());
        assert!(c.complete_eligible() && c.partial_eligible());
    }

    #[test]
    fn no_functionality_extension_is_isomorphic() {
        let (_, r, q) = setup("A sub A", "q(x,y) :- r(x,y), s(y,z), A(z).");
        let ext = fa_extension(&r, &q, AnswerMode::Extended);
        for atom in &ext.atoms {
            match atom.origin {
                AtomOrigin::Concept(..) => assert_eq!(atom.vars.len(), 1),
                AtomOrigin::Role(..) => assert_eq!(atom.vars.len(), 2),
            }
        }
        assert_eq!(ext.answer_vars, q.answer_vars);
    }

    #[test]
    fn join_tree_variable_connectivity() {
        let (_, r, q) = setup(EX2_ONT, EX2_Q);
        let c = classify(&r, &q);
        let sets = c.ext.var_sets();
        assert!(c.qplus_acyclic.unwrap().check(&sets));
        let mut with_head = sets.clone();
        with_head.push(c.answer_vars_ext.iter().copied().collect());
        assert!(c.qplus_ext_free_connex.unwrap().check(&with_head));
    }

    #[test]
    fn boolean_query_free_connex_iff_acyclic() {
        let (_, r, q) = setup("A sub A", "q() :- r(x,y), s(y,z).");
        let c = classify(&r, &q);
        assert_eq!(c.qplus_acyclic.is_some(), c.qplus_ext_free_connex.is_some());
    }

    #[test]
    fn bmm_query_classification() {
        // q(x,z,y) = r1(x,u1) ∧ f(z,u1) ∧ f(z,u2) ∧ r2(u2,y) with func(f):
        // in q⁺(x̄⁺) all variables are answer variables.
        let (_, r, q) = setup(
            "A sub exists inv(f) . top\nfunc(f)",
            "q(x,z,y) :- r1(x,u1), f(z,u1), f(z,u2), r2(u2,y).",
        );
        let c = classify(&r, &q);
        assert_eq!(c.answer_vars_ext.len(), q.vars().len());
        assert!(c.complete_eligible());
        assert!(!c.partial_eligible());
        // two f-atoms: q itself is not self-join free (only q⁺ is)
        assert!(!c.self_join_free && c.connected);
        assert!(!c.hardness_notes().is_empty());
    }

    #[test]
    fn triangle_fixture_is_non_chordal() {
        let (vocab, r, q) = setup(
            "func(inv(f0))\nfunc(f1)",
            "q() :- f0(y0,z1), f1(z1,y1), R12(y1,y2), R23(y2,y3), R30(y3,y0).",
        );
        let c = classify(&r, &q);
        assert!(!c.chordal);
        let cycle = c.chordless_cycle.unwrap();
        let mut got = names(&vocab, &cycle);
        got.sort();
        assert_eq!(got, vec!["y0", "y1", "y2", "y3"]);
    }

    #[test]
    fn bad_path_for_matrix_query() {
        let (vocab, r, q) = setup("A sub A", "q(y0,y2) :- R1(y0,y1), R2(y1,y2).");
        let c = classify(&r, &q);
        assert!(c.qplus_acyclic.is_some());
        assert!(c.qplus_ext_free_connex.is_none());
        let p = c.bad_path.unwrap();
        let mut got = names(&vocab, &p);
        if got[0] == "y2" {
            got.reverse();
        }
        assert_eq!(got, vec!["y0", "y1", "y2"]);
    }

    #[test]
    fn qplus_is_self_join_free_via_fresh_symbols() {
        let (vocab, r, q) = setup("A sub A", "q(x) :- r(x,y), r(y,x).");
        assert!(!q.is_self_join_free());
        let ext = fa_extension(&r, &q, AnswerMode::Extended);
        let table = ext.arity_table(&vocab);
        let distinct: HashSet<&String> = table.iter().map(|(n, _)| n).collect();
        assert_eq!(distinct.len(), table.len());
    }
}
