use std::collections::HashMap;

/// Interned symbol. Concept names, role names, constants and variables all
/// share one string table so that a name used in an ontology, a query and a
/// database resolves to the same id.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Sym(pub u32);

/// String interner with dense ids, used as constant-time lookup key
/// everywhere downstream.
#[derive(Default, Debug, Clone)]
pub struct Vocab {
    names: Vec<String>,
    index: HashMap<String, Sym>,
    fresh_hint: HashMap<String, usize>,
}

impl Vocab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Sym {
        if let Some(&s) = self.index.get(name) {
            return s;
        }
        let s = Sym(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), s);
        s
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Interns `<prefix><k>` for the smallest unused `k` not yet handed out.
    pub fn fresh(&mut self, prefix: &str) -> Sym {
        let mut k = self.fresh_hint.get(prefix).copied().unwrap_or(0);
        loop {
            let cand = format!("{prefix}{k}");
            k += 1;
            if !self.index.contains_key(&cand) {
                self.fresh_hint.insert(prefix.to_string(), k);
                return self.intern(&cand);
            }
        }
    }

    /// Fresh labeled null, named `_n<k>`.
    pub fn fresh_null(&mut self) -> Sym {
        self.fresh("_n")
    }

    /// Fresh concept name from the reserved normalization namespace `_N<k>`.
    pub fn fresh_concept(&mut self) -> Sym {
        self.fresh("_N")
    }
}

/// Constants spelled `_n<k>` denote labeled nulls in database files.
pub fn is_null_name(name: &str) -> bool {
    name.strip_prefix("_n")
        .map(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        .unwrap_or(false)
}

/// `_N`-prefixed concept names are reserved for normalization.
pub fn is_reserved_name(name: &str) -> bool {
    name.starts_with("_N")
}
