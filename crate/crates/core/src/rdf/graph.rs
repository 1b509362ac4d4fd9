use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;
use std::sync::Arc;

use super::term::{Term, Triple};

type Index = BTreeMap<Term, BTreeMap<Term, BTreeSet<Term>>>;

fn index_insert(index: &mut Index, a: &Term, b: &Term, c: &Term) -> bool {
    index
        .entry(a.clone())
        .or_default()
        .entry(b.clone())
        .or_default()
        .insert(c.clone())
}

fn index_remove(index: &mut Index, a: &Term, b: &Term, c: &Term) -> bool {
    let Some(second) = index.get_mut(a) else {
        return false;
    };
    let Some(third) = second.get_mut(b) else {
        return false;
    };
    let removed = third.remove(c);
    if third.is_empty() {
        second.remove(b);
    }
    if second.is_empty() {
        index.remove(a);
    }
    removed
}

/// In-memory triple set with SPO, POS and OSP indexes.
///
/// The SPO index doubles as the triple set; iterating it yields triples in
/// canonical order.
#[derive(Clone, Default)]
pub struct Graph {
    spo: Index,
    pos: Index,
    osp: Index,
    len: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` iff the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (s, p, o) = (triple.subject(), triple.predicate(), triple.object());
        if !index_insert(&mut self.spo, s, p, o) {
            return false;
        }
        index_insert(&mut self.pos, p, o, s);
        index_insert(&mut self.osp, o, s, p);
        self.len += 1;
        true
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let (s, p, o) = (triple.subject(), triple.predicate(), triple.object());
        if !index_remove(&mut self.spo, s, p, o) {
            return false;
        }
        index_remove(&mut self.pos, p, o, s);
        index_remove(&mut self.osp, o, s, p);
        self.len -= 1;
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.spo
            .get(triple.subject())
            .and_then(|m| m.get(triple.predicate()))
            .is_some_and(|set| set.contains(triple.object()))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// All triples in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, ps)| {
            ps.iter()
                .flat_map(move |(p, os)| os.iter().map(move |o| make(s, p, o)))
        })
    }

    /// Triples agreeing with every bound position, in canonical order.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<Triple> {
        let mut out = Vec::new();
        match (subject, predicate, object) {
            (Some(s), Some(p), Some(o)) => {
                if let Ok(t) = Triple::new(s.clone(), p.clone(), o.clone()) {
                    if self.contains(&t) {
                        out.push(t);
                    }
                }
                return out;
            }
            (Some(s), Some(p), None) => {
                if let Some(os) = self.spo.get(s).and_then(|m| m.get(p)) {
                    out.extend(os.iter().map(|o| make(s, p, o)));
                }
                return out;
            }
            (Some(s), None, None) => {
                if let Some(ps) = self.spo.get(s) {
                    for (p, os) in ps {
                        out.extend(os.iter().map(|o| make(s, p, o)));
                    }
                }
                return out;
            }
            (None, Some(p), Some(o)) => {
                if let Some(ss) = self.pos.get(p).and_then(|m| m.get(o)) {
                    out.extend(ss.iter().map(|s| make(s, p, o)));
                }
            }
            (None, Some(p), None) => {
                if let Some(os) = self.pos.get(p) {
                    for (o, ss) in os {
                        out.extend(ss.iter().map(|s| make(s, p, o)));
                    }
                }
            }
            (Some(s), None, Some(o)) => {
                if let Some(ps) = self.osp.get(o).and_then(|m| m.get(s)) {
                    out.extend(ps.iter().map(|p| make(s, p, o)));
                }
                return out;
            }
            (None, None, Some(o)) => {
                if let Some(ss) = self.osp.get(o) {
                    for (s, ps) in ss {
                        out.extend(ps.iter().map(|p| make(s, p, o)));
                    }
                }
                return out;
            }
            (None, None, None) => return self.iter().collect(),
        }
        // POS lookups come back in (p, o, s) order.
        out.sort();
        out
    }

    /// Objects of `(subject, predicate, ?)` in canonical order.
    pub fn objects(&self, subject: &Term, predicate: &Term) -> Vec<Term> {
        self.spo
            .get(subject)
            .and_then(|m| m.get(predicate))
            .map(|os| os.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// Subjects of `(?, predicate, object)` in canonical order.
    pub fn subjects(&self, predicate: &Term, object: &Term) -> Vec<Term> {
        self.pos
            .get(predicate)
            .and_then(|m| m.get(object))
            .map(|ss| ss.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// Whether the term occurs anywhere in the graph.
    pub fn mentions(&self, term: &Term) -> bool {
        self.spo.contains_key(term) || self.pos.contains_key(term) || self.osp.contains_key(term)
    }

    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.iter() {
            self.insert(t);
        }
    }

    pub fn freeze(self) -> FrozenGraph {
        FrozenGraph(Arc::new(self))
    }
}

fn make(s: &Term, p: &Term, o: &Term) -> Triple {
    Triple::new(s.clone(), p.clone(), o.clone()).expect("indexed triples are well-formed")
}

/// Union of two graphs.
pub fn merge(a: &Graph, b: &Graph) -> Graph {
    let mut out = a.clone();
    out.extend_from(b);
    out
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.spo == other.spo
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

/// An immutable, cheaply cloneable graph that can be shared across threads.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FrozenGraph(Arc<Graph>);

impl FrozenGraph {
    /// Copies the triples back into a writable graph.
    pub fn thaw(&self) -> Graph {
        (*self.0).clone()
    }
}

impl Deref for FrozenGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl From<Graph> for FrozenGraph {
    fn from(graph: Graph) -> Self {
        graph.freeze()
    }
}
