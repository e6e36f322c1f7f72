//! Trace-based universal models: the depth-bounded universal model
//! `U_{D,O}` and the query-directed universal model `U_{D,Q}` with its
//! chase-like witness decomposition.
//!
//! Anonymous elements are materialized as fresh labeled nulls with a
//! provenance table mapping each null to the trace step that created it,
//! which keeps fact storage flat. A trace extends a node by a maximal
//! successor requirement, subject to two blocking rules: at a database
//! constant, a requirement containing a functional role that already has a
//! named successor has been absorbed by the chase (no anonymous child), and
//! at an anonymous node a requirement pointing back through a functional
//! role is witnessed by the parent.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::chase::{chase, Unsatisfiable};
use crate::model::database::{Database, UnaryPred};
use crate::model::query::Cq;
use crate::model::syntax::{Role, Signature};
use crate::model::vocab::{Sym, Vocab};
use crate::reasoner::{ConceptType, Reasoner};

/// One anonymous element: origin constant and the alternating sequence of
/// role sets and concept types that generates it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub origin: Sym,
    pub steps: Vec<(BTreeSet<Role>, ConceptType)>,
}

/// Where a null of the model came from.
#[derive(Clone, Debug)]
pub enum NullOrigin {
    /// A trace step below `parent` via the given roles, labeled `label`.
    Step { parent: Sym, roles: BTreeSet<Role>, label: ConceptType, depth: usize },
    /// A node of the disjoint copy of the `idx`-th closure query.
    Copy { idx: usize },
}

#[derive(Clone, Debug)]
pub struct UniversalModel {
    /// All facts: chase, trace part and closure copies. Elements outside
    /// the original active domain are flagged as nulls.
    pub db: Database,
    /// `ch_O(D)`: the restriction of the model to the original domain.
    pub base: Database,
    pub base_adom: HashSet<Sym>,
    pub provenance: HashMap<Sym, NullOrigin>,
    pub trace_depth: usize,
}

impl UniversalModel {
    /// Reconstructs the full trace of a null by walking parents.
    pub fn trace_of(&self, null: Sym) -> Option<Trace> {
        let mut steps = Vec::new();
        let mut cur = null;
        loop {
            match self.provenance.get(&cur)? {
                NullOrigin::Step { parent, roles, label, .. } => {
                    steps.push((roles.clone(), label.clone()));
                    if self.base_adom.contains(parent) {
                        steps.reverse();
                        return Some(Trace { origin: *parent, steps });
                    }
                    cur = *parent;
                }
                NullOrigin::Copy { .. } => return None,
            }
        }
    }
}

fn ontology_label(reasoner: &Reasoner, db: &Database, c: Sym) -> ConceptType {
    let known = reasoner.known_concepts();
    db.concepts_of(c).intersection(known).copied().collect()
}

/// One-step extensions of a trace: maximal successor requirements of the
/// tip, minus those blocked by an existing functional edge (length-0
/// traces) or by a functional back-edge to the parent (longer traces).
pub fn trace_successors(
    reasoner: &Reasoner,
    ch: &Database,
    t: &Trace,
) -> Vec<(BTreeSet<Role>, ConceptType)> {
    match t.steps.last() {
        None => {
            let label = ontology_label(reasoner, ch, t.origin);
            root_successors(reasoner, ch, t.origin, &label)
        }
        Some((incoming, label)) => inner_successors(reasoner, incoming, label),
    }
}

fn root_successors(
    reasoner: &Reasoner,
    ch: &Database,
    c: Sym,
    label: &ConceptType,
) -> Vec<(BTreeSet<Role>, ConceptType)> {
    reasoner
        .maximal_succs(label)
        .into_iter()
        .filter(|req| {
            !req.roles
                .iter()
                .any(|&r| reasoner.entails_func(r) && !ch.successors(c, r).is_empty())
        })
        .map(|req| (req.roles, req.target))
        .collect()
}

fn inner_successors(
    reasoner: &Reasoner,
    incoming: &BTreeSet<Role>,
    label: &ConceptType,
) -> Vec<(BTreeSet<Role>, ConceptType)> {
    reasoner
        .maximal_succs(label)
        .into_iter()
        .filter(|req| {
            !req.roles
                .iter()
                .any(|&r| incoming.contains(&r.inverse()) && reasoner.entails_func(r))
        })
        .map(|req| (req.roles, req.target))
        .collect()
}

fn add_role_fact(db: &mut Database, r: Role, from: Sym, to: Sym) {
    if r.inverted {
        db.insert_binary(r.name, to, from);
    } else {
        db.insert_binary(r.name, from, to);
    }
}

/// `ch_O(D)` plus every trace of length ≤ `depth` materialized as a fresh
/// null with facts `A(tρM)` for `A ∈ M` and `R(t, tρM)` for `R ∈ ρ`.
pub fn build_universal(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    depth: usize,
) -> Result<UniversalModel, Unsatisfiable> {
    let base = chase(reasoner, db)?;
    let mut out = base.clone();
    let mut provenance = HashMap::new();
    attach_traces(reasoner, vocab, &base, &mut out, &mut provenance, depth);
    Ok(UniversalModel {
        db: out,
        base_adom: base.adom().iter().copied().collect(),
        base,
        provenance,
        trace_depth: depth,
    })
}

fn attach_traces(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    base: &Database,
    out: &mut Database,
    provenance: &mut HashMap<Sym, NullOrigin>,
    depth: usize,
) {
    let mut queue: VecDeque<(Sym, Option<BTreeSet<Role>>, ConceptType, usize)> = VecDeque::new();
    for &c in base.adom() {
        queue.push_back((c, None, ontology_label(reasoner, base, c), 0));
    }
    while let Some((node, incoming, label, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        let succs = match &incoming {
            None => root_successors(reasoner, base, node, &label),
            Some(inc) => inner_successors(reasoner, inc, &label),
        };
        for (roles, target) in succs {
            let null = vocab.fresh_null();
            out.mark_null(null);
            for &a in &target {
                out.insert_unary(UnaryPred::Name(a), null);
            }
            for &r in &roles {
                add_role_fact(out, r, node, null);
            }
            provenance.insert(
                null,
                NullOrigin::Step {
                    parent: node,
                    roles: roles.clone(),
                    label: target.clone(),
                    depth: d + 1,
                },
            );
            queue.push_back((null, Some(roles), target, d + 1));
        }
    }
}

/// A Boolean tree CQ: nodes carry concept-name sets, edges carry non-empty
/// role sets oriented from the first endpoint to the second. No reflexive
/// atoms; multi-edges are represented by the role set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeCq {
    pub labels: Vec<ConceptType>,
    pub edges: Vec<(usize, usize, BTreeSet<Role>)>,
}

impl TreeCq {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn atom_count(&self) -> usize {
        self.labels.iter().map(|l| l.len()).sum::<usize>()
            + self.edges.iter().map(|(_, _, rs)| rs.len()).sum::<usize>()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize, BTreeSet<Role>)>> {
        let mut adj: Vec<Vec<(usize, usize, BTreeSet<Role>)>> =
            vec![Vec::new(); self.node_count()];
        for (ei, (u, v, roles)) in self.edges.iter().enumerate() {
            adj[*u].push((ei, *v, roles.clone()));
            adj[*v].push((ei, *u, roles.iter().map(|r| r.inverse()).collect()));
        }
        adj
    }

    /// Isomorphism-invariant code: minimum rooted code over all roots.
    pub fn canon_code(&self) -> String {
        let adj = self.adjacency();
        (0..self.node_count())
            .map(|r| self.rooted_code(&adj, r, usize::MAX))
            .min()
            .unwrap_or_default()
    }

    fn rooted_code(
        &self,
        adj: &[Vec<(usize, usize, BTreeSet<Role>)>],
        node: usize,
        from_edge: usize,
    ) -> String {
        let mut children: Vec<String> = adj[node]
            .iter()
            .filter(|(ei, _, _)| *ei != from_edge)
            .map(|(ei, other, roles)| {
                let rs: Vec<String> = roles
                    .iter()
                    .map(|r| format!("{}{}", r.name.0, if r.inverted { "-" } else { "" }))
                    .collect();
                format!("[{}]{}", rs.join(","), self.rooted_code(adj, *other, *ei))
            })
            .collect();
        children.sort();
        let label: Vec<String> = self.labels[node].iter().map(|a| a.0.to_string()).collect();
        format!("({};{})", label.join(","), children.join(""))
    }

    /// The canonical database of the query violates no entailed
    /// functionality assertion.
    pub fn respects_funcs(&self, reasoner: &Reasoner) -> bool {
        let adj = self.adjacency();
        for u in 0..self.node_count() {
            let mut seen: HashMap<Role, usize> = HashMap::new();
            for (_, other, roles) in &adj[u] {
                for &r in roles {
                    if reasoner.entails_func(r) {
                        match seen.insert(r, *other) {
                            Some(prev) if prev != *other => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }
}

/// The closure query set for `Q`.
pub struct ClQSet {
    pub trees: Vec<TreeCq>,
    /// Whether the full enumeration was performed. When the full
    /// enumeration would exceed the candidate budget, the set is restricted
    /// to quotients of induced subqueries of `q`, which covers every query
    /// the engine evaluates against the model.
    pub complete: bool,
}

/// All Boolean tree CQs over `sig` with at most `|var(q)|` variables, up to
/// isomorphism, satisfying all entailed functionality assertions.
pub fn cl_q(reasoner: &Reasoner, sig: &Signature, q: &Cq, budget: usize) -> ClQSet {
    let n = q.vars().len().max(1);
    let concepts: Vec<Sym> = sig.concepts.iter().copied().collect();
    let mut roles: Vec<Role> = Vec::new();
    for &r in &sig.roles {
        roles.push(Role::new(r));
        roles.push(Role::inv(r));
    }
    if estimate_full(n, concepts.len(), roles.len()) <= budget as f64 {
        ClQSet { trees: enumerate_full(reasoner, &concepts, &roles, n), complete: true }
    } else {
        ClQSet { trees: quotient_tree_cqs(reasoner, q, n), complete: false }
    }
}

fn estimate_full(n: usize, concepts: usize, roles: usize) -> f64 {
    let edge_opts = (2f64.powi(roles as i32) - 1.0).max(1.0);
    let node_opts = 2f64.powi(concepts as i32);
    let mut total = 0f64;
    for m in 1..=n {
        let trees = if m <= 2 { 1.0 } else { (m as f64).powi(m as i32 - 2) };
        total += trees * edge_opts.powi(m as i32 - 1) * node_opts.powi(m as i32);
    }
    total
}

fn labeled_trees(m: usize) -> Vec<Vec<(usize, usize)>> {
    match m {
        0 => vec![],
        1 => vec![vec![]],
        2 => vec![vec![(0, 1)]],
        _ => {
            let mut out = Vec::new();
            let mut seq = vec![0usize; m - 2];
            loop {
                out.push(decode_pruefer(&seq, m));
                let mut i = 0;
                loop {
                    if i == seq.len() {
                        return out;
                    }
                    seq[i] += 1;
                    if seq[i] < m {
                        break;
                    }
                    seq[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

fn decode_pruefer(seq: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; m];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    let mut used = vec![false; m];
    for &s in seq {
        let leaf = (0..m).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        used[leaf] = true;
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1 && !used[v]).collect();
    edges.push((rest[0].min(rest[1]), rest[0].max(rest[1])));
    edges
}

fn subsets<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for &it in items {
        let mut more: Vec<Vec<T>> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.push(it);
                s
            })
            .collect();
        out.append(&mut more);
    }
    out
}

fn enumerate_full(reasoner: &Reasoner, concepts: &[Sym], roles: &[Role], n: usize) -> Vec<TreeCq> {
    let node_opts: Vec<ConceptType> =
        subsets(concepts).into_iter().map(|s| s.into_iter().collect()).collect();
    let edge_opts: Vec<BTreeSet<Role>> = subsets(roles)
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.into_iter().collect())
        .collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for m in 1..=n {
        for shape in labeled_trees(m) {
            let ecount = shape.len();
            let mut eidx = vec![0usize; ecount];
            loop {
                let mut nidx = vec![0usize; m];
                loop {
                    let tree = TreeCq {
                        labels: nidx.iter().map(|&i| node_opts[i].clone()).collect(),
                        edges: shape
                            .iter()
                            .zip(&eidx)
                            .map(|(&(u, v), &i)| (u, v, edge_opts[i].clone()))
                            .collect(),
                    };
                    if tree.atom_count() > 0 && tree.respects_funcs(reasoner) {
                        let code = tree.canon_code();
                        if seen.insert(code) {
                            out.push(tree);
                        }
                    }
                    if !advance(&mut nidx, node_opts.len()) {
                        break;
                    }
                }
                if ecount == 0 || !advance(&mut eidx, edge_opts.len()) {
                    break;
                }
            }
        }
    }
    out
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Tree CQs arising as quotients of induced subqueries of `q`.
pub fn quotient_tree_cqs(reasoner: &Reasoner, q: &Cq, n: usize) -> Vec<TreeCq> {
    let vars = q.vars().to_vec();
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for partition in partitions(vars.len()) {
        let class_of: HashMap<Sym, usize> =
            vars.iter().enumerate().map(|(i, &v)| (v, partition[i])).collect();
        let class_count = partition.iter().max().map(|m| m + 1).unwrap_or(0);
        for keep in subsets(&(0..class_count).collect::<Vec<_>>()) {
            if keep.is_empty() || keep.len() > n {
                continue;
            }
            let keep_set: HashSet<usize> = keep.iter().copied().collect();
            if let Some(tree) = component_tree(q, &class_of, &keep_set) {
                if tree.atom_count() > 0 && tree.respects_funcs(reasoner) {
                    let code = tree.canon_code();
                    if seen.insert(code) {
                        out.push(tree);
                    }
                }
            }
        }
    }
    out
}

/// Builds the induced quotient on the given classes, provided it is a
/// connected tree without reflexive atoms.
fn component_tree(
    q: &Cq,
    class_of: &HashMap<Sym, usize>,
    keep: &HashSet<usize>,
) -> Option<TreeCq> {
    let mut nodes: Vec<usize> = keep.iter().copied().collect();
    nodes.sort();
    let index: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut labels: Vec<ConceptType> = vec![ConceptType::new(); nodes.len()];
    for &(a, v) in &q.concept_atoms {
        if let Some(&i) = class_of.get(&v).and_then(|cls| index.get(cls)) {
            labels[i].insert(a);
        }
    }
    let mut edge_map: HashMap<(usize, usize), BTreeSet<Role>> = HashMap::new();
    for &(r, x, y) in &q.role_atoms {
        let (cx, cy) = (class_of[&x], class_of[&y]);
        if !keep.contains(&cx) || !keep.contains(&cy) {
            continue;
        }
        if cx == cy {
            return None; // reflexive atom
        }
        let (i, j) = (index[&cx], index[&cy]);
        let (a, b, role) = if i < j { (i, j, Role::new(r)) } else { (j, i, Role::inv(r)) };
        edge_map.entry((a, b)).or_default().insert(role);
    }
    if edge_map.len() + 1 != nodes.len() {
        return None;
    }
    let mut reached = HashSet::from([0usize]);
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        for &(a, b) in edge_map.keys() {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && reached.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    if reached.len() != nodes.len() {
        return None;
    }
    let mut edges: Vec<(usize, usize, BTreeSet<Role>)> =
        edge_map.into_iter().map(|((a, b), rs)| (a, b, rs)).collect();
    edges.sort();
    Some(TreeCq { labels, edges })
}

/// All set partitions of `{0..n}` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max + 1 {
            cur[i] = v;
            rec(cur, i + 1, max.max(v), out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0usize; n];
    rec(&mut cur, 1, 0, &mut out);
    out
}

/// Deterministic downward unfolding of a node kind.
pub struct Unfolding {
    pub labels: Vec<ConceptType>,
    pub parents: Vec<Option<(usize, BTreeSet<Role>)>>,
    pub children: Vec<Vec<(BTreeSet<Role>, usize)>>,
}

pub fn unfold_type(
    reasoner: &Reasoner,
    root_label: &ConceptType,
    root_incoming: Option<&BTreeSet<Role>>,
    depth: usize,
) -> Unfolding {
    let mut u = Unfolding {
        labels: vec![root_label.clone()],
        parents: vec![None],
        children: vec![Vec::new()],
    };
    let mut frontier: Vec<(usize, Option<BTreeSet<Role>>, usize)> =
        vec![(0, root_incoming.cloned(), 0)];
    while let Some((idx, incoming, d)) = frontier.pop() {
        if d >= depth {
            continue;
        }
        let label = u.labels[idx].clone();
        let succs = match &incoming {
            Some(inc) => inner_successors(reasoner, inc, &label),
            None => reasoner
                .maximal_succs(&label)
                .into_iter()
                .map(|r| (r.roles, r.target))
                .collect(),
        };
        for (roles, target) in succs {
            let child = u.labels.len();
            u.labels.push(target.clone());
            u.parents.push(Some((idx, roles.clone())));
            u.children.push(Vec::new());
            u.children[idx].push((roles.clone(), child));
            frontier.push((child, Some(roles), d + 1));
        }
    }
    u
}

/// Decides `D_M, O ⊨ p` for a Boolean tree CQ `p`. The trace tree below a
/// node is determined by the node's kind (incoming roles and label), and a
/// connected image lies entirely below its shallowest element, so it
/// suffices to root a homomorphism search at every reachable kind with an
/// unfolding of `|p|` levels.
pub fn type_entails_tree_cq(reasoner: &Reasoner, label: &ConceptType, p: &TreeCq) -> bool {
    let depth = p.node_count();
    let mut kinds: Vec<(Option<BTreeSet<Role>>, ConceptType)> = vec![(None, label.clone())];
    let mut seen: HashSet<(BTreeSet<Role>, Vec<Sym>)> = HashSet::new();
    let mut stack = vec![label.clone()];
    let mut visited: HashSet<Vec<Sym>> = HashSet::new();
    while let Some(l) = stack.pop() {
        if !visited.insert(l.iter().copied().collect()) {
            continue;
        }
        for req in reasoner.maximal_succs(&l) {
            let key = (req.roles.clone(), req.target.iter().copied().collect::<Vec<_>>());
            if seen.insert(key) {
                kinds.push((Some(req.roles.clone()), req.target.clone()));
            }
            stack.push(req.target);
        }
    }
    kinds.iter().any(|(incoming, l)| {
        let model = unfold_type(reasoner, l, incoming.as_ref(), depth);
        tree_hom_exists(p, &model)
    })
}

fn tree_hom_exists(p: &TreeCq, model: &Unfolding) -> bool {
    fn rec(
        p: &TreeCq,
        adj: &[Vec<(usize, usize, BTreeSet<Role>)>],
        model: &Unfolding,
        memo: &mut HashMap<(usize, usize, usize), bool>,
        pn: usize,
        from_edge: usize,
        mn: usize,
    ) -> bool {
        if let Some(&r) = memo.get(&(pn, from_edge, mn)) {
            return r;
        }
        let ok = p.labels[pn].is_subset(&model.labels[mn])
            && adj[pn]
                .iter()
                .filter(|(ei, _, _)| *ei != from_edge)
                .all(|(ei, other, need)| {
                    let mut cands: Vec<(BTreeSet<Role>, usize)> = model.children[mn].clone();
                    if let Some((par, via)) = &model.parents[mn] {
                        cands.push((via.iter().map(|r| r.inverse()).collect(), *par));
                    }
                    cands.iter().any(|(avail, w)| {
                        need.is_subset(avail) && rec(p, adj, model, memo, *other, *ei, *w)
                    })
                });
        memo.insert((pn, from_edge, mn), ok);
        ok
    }
    let adj = p.adjacency();
    let mut memo: HashMap<(usize, usize, usize), bool> = HashMap::new();
    (0..model.labels.len()).any(|mn| rec(p, &adj, model, &mut memo, 0, usize::MAX, mn))
}

/// The query-directed universal model `U_{D,Q}`: Step 1 the chase, Step 2
/// traces of length `|var(q)|`, Step 3 one fresh disjoint copy of the
/// canonical database of every closure query entailed at some constant.
pub fn build_u_dq(
    reasoner: &Reasoner,
    vocab: &mut Vocab,
    db: &Database,
    sig: &Signature,
    q: &Cq,
    cl_budget: usize,
) -> Result<UniversalModel, Unsatisfiable> {
    let n = q.vars().len().max(1);
    let mut model = build_universal(reasoner, vocab, db, n)?;
    let cl = cl_q(reasoner, sig, q, cl_budget);

    // Entailment of a closure query is a property of the constant's label.
    let mut labels: Vec<ConceptType> = Vec::new();
    let mut label_seen: HashSet<Vec<Sym>> = HashSet::new();
    for &c in model.base.adom() {
        let l = ontology_label(reasoner, &model.base, c);
        if label_seen.insert(l.iter().copied().collect()) {
            labels.push(l);
        }
    }
    for (idx, p) in cl.trees.iter().enumerate() {
        if !labels.iter().any(|l| type_entails_tree_cq(reasoner, l, p)) {
            continue;
        }
        let nodes: Vec<Sym> = (0..p.node_count()).map(|_| vocab.fresh_null()).collect();
        for (ni, label) in p.labels.iter().enumerate() {
            model.db.mark_null(nodes[ni]);
            for &a in label {
                model.db.insert_unary(UnaryPred::Name(a), nodes[ni]);
            }
            model.provenance.insert(nodes[ni], NullOrigin::Copy { idx });
        }
        for (u, v, roles) in &p.edges {
            for &r in roles {
                add_role_fact(&mut model.db, r, nodes[*u], nodes[*v]);
            }
        }
    }
    Ok(model)
}

#[derive(thiserror::Error, Debug)]
#[error("witness piece contains more than one original constant")]
pub struct MalformedWitness;

/// The chase-like decomposition: remove all role facts between two original
/// constants and take the maximally connected components that contain
/// nulls. Each piece holds at most one original constant, and the null
/// sets of distinct pieces are disjoint.
pub fn witness_decomposition(u: &UniversalModel) -> Result<Vec<Database>, MalformedWitness> {
    let adom = u.db.adom();
    let index: HashMap<Sym, usize> = adom.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dsu: Vec<usize> = (0..adom.len()).collect();
    fn find(dsu: &mut Vec<usize>, mut x: usize) -> usize {
        while dsu[x] != x {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        x
    }
    for &(_, c, d) in u.db.binary_facts() {
        if u.db.is_null(c) || u.db.is_null(d) {
            let (rc, rd) = (find(&mut dsu, index[&c]), find(&mut dsu, index[&d]));
            dsu[rc] = rd;
        }
    }
    let mut members: HashMap<usize, BTreeSet<Sym>> = HashMap::new();
    for &c in adom {
        if u.db.is_null(c) {
            members.entry(find(&mut dsu, index[&c])).or_default().insert(c);
        }
    }
    for &(_, c, d) in u.db.binary_facts() {
        if u.db.is_null(c) != u.db.is_null(d) {
            let null = if u.db.is_null(c) { c } else { d };
            let root = find(&mut dsu, index[&null]);
            members.get_mut(&root).unwrap().extend([c, d]);
        }
    }
    let mut roots: Vec<usize> = members.keys().copied().collect();
    roots.sort();
    let mut pieces = Vec::new();
    for root in roots {
        let group = &members[&root];
        let constants = group.iter().filter(|c| !u.db.is_null(**c)).count();
        if constants > 1 {
            return Err(MalformedWitness);
        }
        let mut piece = Database::default();
        for &(r, c, d) in u.db.binary_facts() {
            if (u.db.is_null(c) || u.db.is_null(d)) && group.contains(&c) && group.contains(&d) {
                piece.insert_binary(r, c, d);
            }
        }
        for &(p, c) in u.db.unary_facts() {
            if u.db.is_null(c) && group.contains(&c) {
                piece.insert_unary(p, c);
            }
        }
        for &nl in group {
            if u.db.is_null(nl) {
                piece.mark_null(nl);
            }
        }
        pieces.push(piece);
    }
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normalize, parse_database, parse_ontology, parse_query, Vocab};

    fn setup(ont: &str, db: &str) -> (Vocab, Reasoner, Database) {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(&mut vocab, ont).unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        let db = parse_database(&mut vocab, db).unwrap();
        (vocab, r, db)
    }

    const EX1_ONT: &str = "Company sub exists hasEmployee . Person\n\
        TechCompany sub Company\nCarCompany sub Company\n\
        TechFactory sub exists hasOwner . TechCompany\n\
        CarFactory sub exists hasOwner . CarCompany\n\
        func(hasOwner)";

    #[test]
    fn trace_extends_by_merged_requirement() {
        let (mut vocab, r, db) =
            setup(EX1_ONT, "CarFactory(gigafactory1).\nTechFactory(gigafactory1).");
        let g = vocab.intern("gigafactory1");
        let ch = chase(&r, &db).unwrap();
        let t = Trace { origin: g, steps: vec![] };
        let succs = trace_successors(&r, &ch, &t);
        assert_eq!(succs.len(), 1);
        let has_owner = Role::new(vocab.lookup("hasOwner").unwrap());
        assert!(succs[0].0.contains(&has_owner));
        for n in ["TechCompany", "CarCompany", "Company"] {
            assert!(succs[0].1.contains(&vocab.lookup(n).unwrap()));
        }
    }

    #[test]
    fn existing_functional_edge_blocks_trace() {
        let (mut vocab, r, db) = setup(
            EX1_ONT,
            "CarFactory(gigafactory1).\nTechFactory(gigafactory1).\n\
             hasOwner(gigafactory1,tesla).",
        );
        let g = vocab.intern("gigafactory1");
        let ch = chase(&r, &db).unwrap();
        let succs = trace_successors(&r, &ch, &Trace { origin: g, steps: vec![] });
        let has_owner = Role::new(vocab.lookup("hasOwner").unwrap());
        assert!(succs.iter().all(|(roles, _)| !roles.contains(&has_owner)));
    }

    #[test]
    fn empty_type_has_no_extensions() {
        let (mut vocab, r, db) = setup("A sub B", "A(c).");
        let ch = chase(&r, &db).unwrap();
        let c = vocab.intern("c");
        assert!(trace_successors(&r, &ch, &Trace { origin: c, steps: vec![] }).is_empty());
    }

    #[test]
    fn depth_zero_is_exactly_the_chase() {
        let (mut vocab, r, db) = setup(EX1_ONT, "CarFactory(g).");
        let m = build_universal(&r, &mut vocab, &db, 0).unwrap();
        assert_eq!(m.db, m.base);
    }

    #[test]
    fn intro_example_universal_model() {
        let (mut vocab, r, db) = setup(
            "Researcher sub exists worksFor . University\nUniversity sub Academia",
            "Researcher(mary).",
        );
        let m = build_universal(&r, &mut vocab, &db, 2).unwrap();
        let mary = vocab.lookup("mary").unwrap();
        let works_for = Role::new(vocab.lookup("worksFor").unwrap());
        let succs = m.db.successors(mary, works_for);
        assert_eq!(succs.len(), 1);
        let n = succs[0];
        assert!(m.db.is_null(n));
        for c in ["University", "Academia"] {
            assert!(m.db.has_concept(vocab.lookup(c).unwrap(), n));
        }
        let t = m.trace_of(n).unwrap();
        assert_eq!(t.origin, mary);
        assert_eq!(t.steps.len(), 1);
    }

    #[test]
    fn cl_q_single_variable() {
        let (mut vocab, r, _) = setup("A sub B", "");
        let q = parse_query(&mut vocab, "q(x) :- A(x).").unwrap();
        let mut sig = Signature::default();
        sig.concepts.insert(vocab.lookup("A").unwrap());
        sig.concepts.insert(vocab.lookup("B").unwrap());
        let set = cl_q(&r, &sig, &q, 100_000);
        assert!(set.complete);
        // non-empty subsets of {A, B}: {A}, {B}, {A,B}
        assert_eq!(set.trees.len(), 3);
    }

    #[test]
    fn cl_q_two_variables_no_reflexive() {
        let (mut vocab, r, _) = setup("A sub A", "");
        let a = vocab.intern("A");
        let rr = vocab.intern("r");
        let q = parse_query(&mut vocab, "q(x,y) :- r(x,y).").unwrap();
        let mut sig = Signature::default();
        sig.concepts.insert(a);
        sig.roles.insert(rr);
        let set = cl_q(&r, &sig, &q, 100_000);
        assert!(set.complete);
        // includes A(x) ∧ r(x,y) ∧ A(y)
        let target = TreeCq {
            labels: vec![BTreeSet::from([a]), BTreeSet::from([a])],
            edges: vec![(0, 1, BTreeSet::from([Role::new(rr)]))],
        };
        let code = target.canon_code();
        assert!(set.trees.iter().any(|t| t.canon_code() == code));
        // no reflexive atoms: every tree with 1 node has no edges
        assert!(set
            .trees
            .iter()
            .all(|t| t.node_count() > 1 || t.edges.is_empty()));
    }

    #[test]
    fn cl_q_functionality_filter() {
        let (mut vocab, r, _) = setup("func(r)", "");
        let rr = vocab.lookup("r").unwrap();
        let q = parse_query(&mut vocab, "q(x,y,z) :- r(x,y), r(x,z).").unwrap();
        let mut sig = Signature::default();
        sig.roles.insert(rr);
        let set = cl_q(&r, &sig, &q, 100_000);
        assert!(set.complete);
        // no tree with two distinct r-successors of one node
        for t in &set.trees {
            assert!(t.respects_funcs(&r));
        }
        let bad = TreeCq {
            labels: vec![BTreeSet::new(), BTreeSet::new(), BTreeSet::new()],
            edges: vec![
                (0, 1, BTreeSet::from([Role::new(rr)])),
                (0, 2, BTreeSet::from([Role::new(rr)])),
            ],
        };
        let bad_code = bad.canon_code();
        assert!(set.trees.iter().all(|t| t.canon_code() != bad_code));
    }

    #[test]
    fn witness_pieces_of_intro_example() {
        let mut vocab = Vocab::new();
        let ont = parse_ontology(
            &mut vocab,
            "Researcher sub exists worksFor . University\nUniversity sub Academia",
        )
        .unwrap();
        let norm = normalize(&ont, &mut vocab);
        let r = Reasoner::new(&norm).unwrap();
        let db = parse_database(&mut vocab, "Researcher(mary).").unwrap();
        let q = parse_query(&mut vocab, "q(x,y) :- worksFor(x,y), Academia(y).").unwrap();
        let sig = norm.sig().union(&q.sig());
        let m = build_u_dq(&r, &mut vocab, &db, &sig, &q, 100_000).unwrap();
        let pieces = witness_decomposition(&m).unwrap();
        assert!(!pieces.is_empty());
        // the trace piece: worksFor(mary, n), University(n), Academia(n)
        let mary = vocab.lookup("mary").unwrap();
        let with_mary: Vec<_> =
            pieces.iter().filter(|p| p.adom().contains(&mary)).collect();
        assert_eq!(with_mary.len(), 1);
        assert_eq!(with_mary[0].binary_facts().len(), 1);
        assert!(with_mary[0].unary_facts().len() >= 2);
    }

    #[test]
    fn chase_only_model_has_no_pieces() {
        let (mut vocab, r, db) = setup("A sub B", "A(c).\nr(c,d).");
        let m = build_universal(&r, &mut vocab, &db, 3).unwrap();
        let pieces = witness_decomposition(&m).unwrap();
        assert!(pieces.is_empty());
    }
}
