//! Test-side generators and reference implementations shared by the
//! integration tests and the acceptance runner.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use feo::rdf::{Graph, Term, Triple};
use feo::vocab::{eo, feo as f, food, owl, rdf, rdfs};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Raw = (Term, Term, Term);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn iri(s: &str) -> Term {
    Term::iri(s)
}

pub fn raw_set(g: &Graph) -> BTreeSet<Raw> {
    g.iter().map(Triple::into_parts).collect()
}

pub fn graph_of(set: &BTreeSet<Raw>) -> Graph {
    set.iter()
        .map(|(s, p, o)| Triple::new(s.clone(), p.clone(), o.clone()).unwrap())
        .collect()
}

// ---------------------------------------------------------------------------
// Random graphs over the food-explanation vocabulary

fn feo_local(name: &str) -> Term {
    Term::iri(format!("{}{name}", feo::vocab::ns::FEO))
}

fn classes() -> Vec<Term> {
    let mut v: Vec<Term> = [
        f::CHARACTERISTIC,
        f::ECOSYSTEM_CHARACTERISTIC,
        f::SYSTEM_CHARACTERISTIC,
        f::USER_CHARACTERISTIC,
        f::SEASON_CHARACTERISTIC,
        f::ALLERGIC_FOOD_CHARACTERISTIC,
        f::OPPOSING_CHARACTERISTIC,
        f::INGREDIENT,
        food::FOOD,
        eo::FACT,
        eo::FOIL,
    ]
    .into_iter()
    .map(iri)
    .collect();
    v.push(feo_local("C0"));
    v.push(feo_local("C1"));
    v
}

fn properties() -> Vec<Term> {
    let mut v: Vec<Term> = [
        f::HAS_PARAMETER,
        f::HAS_PRIMARY_PARAMETER,
        f::HAS_CHARACTERISTIC,
        f::IS_CHARACTERISTIC_OF,
        f::HAS_INGREDIENT,
        f::IS_INGREDIENT_OF,
        f::IS_OPPOSED_BY,
        f::FORBIDS,
        f::RECOMMENDS,
    ]
    .into_iter()
    .map(iri)
    .collect();
    v.push(feo_local("p0"));
    v.push(feo_local("p1"));
    v
}

fn individuals() -> Vec<Term> {
    let mut v: Vec<Term> = (0..6).map(|i| feo_local(&format!("x{i}"))).collect();
    v.push(Term::blank("b0").unwrap());
    v
}

fn pick<R: Rng>(rng: &mut R, pool: &[Term]) -> Term {
    pool.choose(rng).unwrap().clone()
}

/// A random graph of at most `max` triples drawn from the vocabulary: data
/// edges, typings, schema axioms, `isInternal` flags and a share of
/// unconstrained triples.
pub fn random_feo_graph<R: Rng>(rng: &mut R, max: usize) -> Graph {
    let classes = classes();
    let props = properties();
    let inds = individuals();
    let booleans = [Term::boolean(true), Term::boolean(false), Term::string("x")];
    let mut everything: Vec<Term> = Vec::new();
    everything.extend(classes.iter().cloned());
    everything.extend(props.iter().cloned());
    everything.extend(inds.iter().cloned());
    let mut predicates = props.clone();
    predicates.extend(
        [
            rdf::TYPE,
            rdfs::SUB_CLASS_OF,
            rdfs::SUB_PROPERTY_OF,
            owl::INVERSE_OF,
            f::IS_INTERNAL,
        ]
        .into_iter()
        .map(iri),
    );
    let n = rng.gen_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let roll = rng.gen_range(0..100);
        let (s, p, o) = match roll {
            0..=34 => (pick(rng, &inds), pick(rng, &props), pick(rng, &inds)),
            35..=54 => (pick(rng, &inds), iri(rdf::TYPE), pick(rng, &classes)),
            55..=64 => (
                pick(rng, &classes),
                iri(rdfs::SUB_CLASS_OF),
                pick(rng, &classes),
            ),
            65..=72 => (
                pick(rng, &props),
                iri(rdfs::SUB_PROPERTY_OF),
                pick(rng, &props),
            ),
            73..=77 => (pick(rng, &props), iri(owl::INVERSE_OF), pick(rng, &props)),
            78..=83 => {
                let axiom = if rng.gen_bool(0.5) {
                    rdfs::DOMAIN
                } else {
                    rdfs::RANGE
                };
                (pick(rng, &props), iri(axiom), pick(rng, &classes))
            }
            84..=87 => (
                pick(rng, &props),
                iri(rdf::TYPE),
                iri(owl::TRANSITIVE_PROPERTY),
            ),
            88..=93 => {
                let holder = if rng.gen_bool(0.7) {
                    pick(rng, &classes)
                } else {
                    pick(rng, &inds)
                };
                (holder, iri(f::IS_INTERNAL), pick(rng, &booleans[..2]))
            }
            _ => {
                let o = if rng.gen_bool(0.2) {
                    pick(rng, &booleans)
                } else {
                    pick(rng, &everything)
                };
                (pick(rng, &everything), pick(rng, &predicates), o)
            }
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

// ---------------------------------------------------------------------------
// Naive stratified fixpoint of the food-explanation rules

fn valid(t: &Raw) -> bool {
    !t.0.is_literal() && t.1.is_iri()
}

fn by_predicate(set: &BTreeSet<Raw>) -> BTreeMap<Term, Vec<(Term, Term)>> {
    let mut m: BTreeMap<Term, Vec<(Term, Term)>> = BTreeMap::new();
    for (s, p, o) in set {
        m.entry(p.clone()).or_default().push((s.clone(), o.clone()));
    }
    m
}

/// Every consequence of one application of the stratum-0 rules to `set`.
fn stratum0_consequences(set: &BTreeSet<Raw>) -> BTreeSet<Raw> {
    let verdict = |t: &Term| t == &iri(eo::FACT) || t == &iri(eo::FOIL);
    let idx = by_predicate(set);
    let empty = Vec::new();
    let get = |p: &str| idx.get(&iri(p)).unwrap_or(&empty);
    let (ty, sc, sp, inv) = (
        iri(rdf::TYPE),
        iri(rdfs::SUB_CLASS_OF),
        iri(rdfs::SUB_PROPERTY_OF),
        iri(owl::INVERSE_OF),
    );
    let mut out = BTreeSet::new();
    // subclass and subproperty transitivity
    for (a, b) in get(rdfs::SUB_CLASS_OF) {
        for (b2, c) in get(rdfs::SUB_CLASS_OF) {
            if b == b2 {
                out.insert((a.clone(), sc.clone(), c.clone()));
            }
        }
    }
    for (p, q) in get(rdfs::SUB_PROPERTY_OF) {
        for (q2, r) in get(rdfs::SUB_PROPERTY_OF) {
            if q == q2 {
                out.insert((p.clone(), sp.clone(), r.clone()));
            }
        }
    }
    // type lifting
    for (x, a) in get(rdf::TYPE) {
        for (a2, b) in get(rdfs::SUB_CLASS_OF) {
            if a == a2 && !verdict(a) && !verdict(b) {
                out.insert((x.clone(), ty.clone(), b.clone()));
            }
        }
    }
    // inverse symmetry
    for (p, q) in get(owl::INVERSE_OF) {
        out.insert((q.clone(), inv.clone(), p.clone()));
    }
    let transitive: BTreeSet<&Term> = get(rdf::TYPE)
        .iter()
        .filter(|(_, c)| c == &iri(owl::TRANSITIVE_PROPERTY))
        .map(|(p, _)| p)
        .collect();
    for (p, edges) in &idx {
        for (x, y) in edges {
            if verdict(y) {
                continue;
            }
            for (p2, q) in get(rdfs::SUB_PROPERTY_OF) {
                if p2 == p {
                    out.insert((x.clone(), q.clone(), y.clone()));
                }
            }
            for (p2, q) in get(owl::INVERSE_OF) {
                if p2 == p {
                    out.insert((y.clone(), q.clone(), x.clone()));
                }
            }
            if transitive.contains(p) {
                for (y2, z) in edges {
                    if y2 == y && !verdict(z) {
                        out.insert((x.clone(), p.clone(), z.clone()));
                    }
                }
            }
            for (p2, c) in get(rdfs::DOMAIN) {
                if p2 == p && !verdict(c) {
                    out.insert((x.clone(), ty.clone(), c.clone()));
                }
            }
            for (p2, c) in get(rdfs::RANGE) {
                if p2 == p && !verdict(c) {
                    out.insert((y.clone(), ty.clone(), c.clone()));
                }
            }
        }
    }
    // opposition edges
    let opposing = iri(f::OPPOSING_CHARACTERISTIC);
    for (param, c) in get(f::HAS_CHARACTERISTIC) {
        if set.contains(&(c.clone(), ty.clone(), opposing.clone())) {
            out.insert((param.clone(), iri(f::IS_OPPOSED_BY), c.clone()));
        }
    }
    // isInternal inheritance from classes
    for (x, c) in get(rdf::TYPE) {
        if verdict(c) {
            continue;
        }
        for (c2, flag) in get(f::IS_INTERNAL) {
            if c2 == c {
                out.insert((x.clone(), iri(f::IS_INTERNAL), flag.clone()));
            }
        }
    }
    out.retain(valid);
    out
}

fn stratum1_consequences(set: &BTreeSet<Raw>) -> BTreeSet<Raw> {
    let idx = by_predicate(set);
    let empty = Vec::new();
    let get = |p: &str| idx.get(&iri(p)).unwrap_or(&empty);
    let ty = iri(rdf::TYPE);
    let eco = iri(f::ECOSYSTEM_CHARACTERISTIC);
    let is_eco = |c: &Term| set.contains(&(c.clone(), ty.clone(), eco.clone()));
    let mut out = BTreeSet::new();
    for (_, p) in get(f::HAS_PARAMETER) {
        for (p2, c) in get(f::HAS_CHARACTERISTIC) {
            if p2 == p {
                let verdict = if is_eco(c) { eo::FACT } else { eo::FOIL };
                out.insert((c.clone(), ty.clone(), iri(verdict)));
            }
        }
        for (p2, c) in get(f::IS_OPPOSED_BY) {
            if p2 == p && is_eco(c) {
                out.insert((c.clone(), ty.clone(), iri(eo::FOIL)));
            }
        }
    }
    out.retain(valid);
    out
}

fn fixpoint(mut set: BTreeSet<Raw>, step: fn(&BTreeSet<Raw>) -> BTreeSet<Raw>) -> BTreeSet<Raw> {
    loop {
        let before = set.len();
        let new = step(&set);
        set.extend(new);
        if set.len() == before {
            return set;
        }
    }
}

/// Recompute-everything evaluation: stratum 0 to a fixpoint, then stratum 1.
pub fn naive_saturate(g: &Graph) -> BTreeSet<Raw> {
    let s0 = fixpoint(raw_set(g), stratum0_consequences);
    fixpoint(s0, stratum1_consequences)
}

/// Stratum-0 consequences of `set` that it does not already contain.
pub fn missing_stratum0(set: &BTreeSet<Raw>) -> BTreeSet<Raw> {
    stratum0_consequences(set)
        .difference(set)
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// Random basic graph pattern queries and a brute-force evaluator

pub const EX: &str = "http://ex/";

#[derive(Debug, Clone)]
pub enum Slot {
    Var(&'static str),
    Const(Term),
}

impl Slot {
    fn text(&self) -> String {
        match self {
            Slot::Var(v) => format!("?{v}"),
            Slot::Const(t) => t.to_string(),
        }
    }

    fn resolve(&self, env: &BTreeMap<&'static str, Term>) -> Option<Term> {
        match self {
            Slot::Var(v) => env.get(v).cloned(),
            Slot::Const(t) => Some(t.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct QPattern {
    pub s: Slot,
    pub p: Slot,
    pub o: Slot,
    /// `p+` instead of `p` (only with a constant predicate).
    pub path: bool,
}

impl QPattern {
    fn text(&self) -> String {
        let p = if self.path {
            format!("{}+", self.p.text())
        } else {
            self.p.text()
        };
        format!("{} {} {} .", self.s.text(), p, self.o.text())
    }

    fn vars(&self) -> Vec<&'static str> {
        [&self.s, &self.p, &self.o]
            .into_iter()
            .filter_map(|s| match s {
                Slot::Var(v) => Some(*v),
                Slot::Const(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct RandomQuery {
    pub distinct: bool,
    pub projection: Vec<&'static str>,
    pub patterns: Vec<QPattern>,
    /// Disjunction of `(left, right)` equalities.
    pub filter: Vec<(Slot, Slot)>,
    pub not_exists: Option<QPattern>,
}

impl RandomQuery {
    pub fn text(&self) -> String {
        let mut q = String::new();
        q.push_str("SELECT ");
        if self.distinct {
            q.push_str("DISTINCT ");
        }
        let proj: Vec<String> = self.projection.iter().map(|v| format!("?{v}")).collect();
        q.push_str(&proj.join(" "));
        q.push_str(" WHERE {\n");
        for p in &self.patterns {
            q.push_str(&format!("  {}\n", p.text()));
        }
        if !self.filter.is_empty() {
            let parts: Vec<String> = self
                .filter
                .iter()
                .map(|(l, r)| format!("{} = {}", l.text(), r.text()))
                .collect();
            q.push_str(&format!("  FILTER ({})\n", parts.join(" || ")));
        }
        if let Some(p) = &self.not_exists {
            q.push_str(&format!("  FILTER NOT EXISTS {{ {} }}\n", p.text()));
        }
        q.push('}');
        q
    }

    pub fn with_patterns(&self, patterns: Vec<QPattern>) -> Self {
        RandomQuery {
            patterns,
            ..self.clone()
        }
    }
}

pub fn small_store_pools() -> (Vec<Term>, Vec<Term>, Vec<Term>) {
    let nodes = (0..5).map(|i| Term::iri(format!("{EX}n{i}"))).collect();
    let preds = (0..3).map(|i| Term::iri(format!("{EX}p{i}"))).collect();
    let literals = vec![Term::integer(1), Term::string("s")];
    (nodes, preds, literals)
}

/// A store of at most `max` triples over five nodes, three predicates and
/// two literals.
pub fn random_store<R: Rng>(rng: &mut R, max: usize) -> Graph {
    let (nodes, preds, literals) = small_store_pools();
    let n = rng.gen_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let o = if rng.gen_bool(0.15) {
            pick(rng, &literals)
        } else {
            pick(rng, &nodes)
        };
        g.insert(Triple::new(pick(rng, &nodes), pick(rng, &preds), o).unwrap());
    }
    g
}

const VARS: [&str; 4] = ["a", "b", "c", "d"];

/// A query of one to `max_patterns` patterns, optionally with a filter,
/// a `FILTER NOT EXISTS` block, paths and `DISTINCT`. Most patterns are
/// generalizations of triples of `store`, so that queries tend to match.
pub fn random_query<R: Rng>(
    rng: &mut R,
    store: &Graph,
    max_patterns: usize,
    allow_paths: bool,
) -> RandomQuery {
    let triples: Vec<Triple> = store.iter().collect();
    let (nodes, preds, literals) = small_store_pools();
    let mut objects = nodes.clone();
    objects.extend(literals.iter().cloned());
    let slot = |rng: &mut R, pool: &[Term], var_p: f64| {
        if rng.gen_bool(var_p) {
            Slot::Var(VARS[rng.gen_range(0..VARS.len())])
        } else {
            Slot::Const(pick(rng, pool))
        }
    };
    let k = rng.gen_range(1..=max_patterns);
    let mut patterns = Vec::new();
    let var = |rng: &mut R| Slot::Var(VARS[rng.gen_range(0..VARS.len())]);
    for _ in 0..k {
        let (s, p, o) = if !triples.is_empty() && rng.gen_bool(0.7) {
            let t = triples.choose(rng).unwrap();
            let generalize = |rng: &mut R, term: &Term, var_p: f64| {
                if rng.gen_bool(var_p) {
                    var(rng)
                } else {
                    Slot::Const(term.clone())
                }
            };
            (
                generalize(rng, t.subject(), 0.7),
                generalize(rng, t.predicate(), 0.25),
                generalize(rng, t.object(), 0.7),
            )
        } else {
            (
                slot(rng, &nodes, 0.7),
                slot(rng, &preds, 0.25),
                slot(rng, &objects, 0.7),
            )
        };
        let path = allow_paths && matches!(p, Slot::Const(_)) && rng.gen_bool(0.2);
        patterns.push(QPattern { s, p, o, path });
    }
    let mut used: Vec<&'static str> = patterns.iter().flat_map(QPattern::vars).collect();
    used.sort();
    used.dedup();
    if used.is_empty() {
        patterns[0].s = Slot::Var("a");
        used.push("a");
    }
    let mut projection: Vec<&'static str> =
        used.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    if projection.is_empty() {
        projection.push(used[0]);
    }
    let mut filter = Vec::new();
    if rng.gen_bool(0.3) {
        for _ in 0..rng.gen_range(1..=2) {
            let left = Slot::Var(used[rng.gen_range(0..used.len())]);
            let right = if rng.gen_bool(0.5) {
                Slot::Var(used[rng.gen_range(0..used.len())])
            } else {
                Slot::Const(pick(rng, &objects))
            };
            filter.push((left, right));
        }
    }
    let not_exists = rng.gen_bool(0.25).then(|| {
        let anchor = Slot::Var(used[rng.gen_range(0..used.len())]);
        let other = if rng.gen_bool(0.5) {
            Slot::Var("z")
        } else {
            Slot::Const(pick(rng, &nodes))
        };
        let (s, o) = if rng.gen_bool(0.5) {
            (anchor, other)
        } else {
            (other, anchor)
        };
        QPattern {
            s,
            p: Slot::Const(pick(rng, &preds)),
            o,
            path: false,
        }
    });
    RandomQuery {
        distinct: rng.gen_bool(0.5),
        projection,
        patterns,
        filter,
        not_exists,
    }
}

fn closure(g: &Graph, p: &Term) -> BTreeSet<(Term, Term)> {
    let mut pairs: BTreeSet<(Term, Term)> = g
        .iter()
        .filter(|t| t.predicate() == p)
        .map(|t| (t.subject().clone(), t.object().clone()))
        .collect();
    loop {
        let mut new = Vec::new();
        for (a, b) in &pairs {
            for (b2, c) in &pairs {
                if b == b2 && !pairs.contains(&(a.clone(), c.clone())) {
                    new.push((a.clone(), c.clone()));
                }
            }
        }
        if new.is_empty() {
            return pairs;
        }
        pairs.extend(new);
    }
}

type Closures = BTreeMap<Term, BTreeSet<(Term, Term)>>;

fn holds(
    g: &Graph,
    paths: &Closures,
    pattern: &QPattern,
    env: &BTreeMap<&'static str, Term>,
) -> bool {
    let (Some(s), Some(p), Some(o)) = (
        pattern.s.resolve(env),
        pattern.p.resolve(env),
        pattern.o.resolve(env),
    ) else {
        return false;
    };
    if pattern.path {
        return paths[&p].contains(&(s, o));
    }
    match Triple::new(s, p, o) {
        Ok(t) => g.contains(&t),
        Err(_) => false,
    }
}

fn assignments(vars: &[&'static str], universe: &[Term]) -> Vec<BTreeMap<&'static str, Term>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * universe.len());
        for env in &out {
            for t in universe {
                let mut e = env.clone();
                e.insert(*v, t.clone());
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Every assignment of the query's variables to terms of the store (and the
/// query's constants) that satisfies all patterns, the filter and the
/// negated block, projected and sorted like a result table.
pub fn brute_force(g: &Graph, q: &RandomQuery) -> Vec<Vec<Option<Term>>> {
    let mut universe: BTreeSet<Term> = BTreeSet::new();
    for t in g.iter() {
        let (s, p, o) = t.into_parts();
        universe.extend([s, p, o]);
    }
    let mut consts = Vec::new();
    for p in q.patterns.iter().chain(q.not_exists.iter()) {
        for slot in [&p.s, &p.p, &p.o] {
            if let Slot::Const(t) = slot {
                consts.push(t.clone());
            }
        }
    }
    universe.extend(consts);
    let universe: Vec<Term> = universe.into_iter().collect();
    let mut vars: Vec<&'static str> = q.patterns.iter().flat_map(QPattern::vars).collect();
    vars.sort();
    vars.dedup();
    let paths: Closures = q
        .patterns
        .iter()
        .filter(|p| p.path)
        .filter_map(|p| match &p.p {
            Slot::Const(t) => Some((t.clone(), closure(g, t))),
            Slot::Var(_) => None,
        })
        .collect();
    let mut rows = Vec::new();
    for env in assignments(&vars, &universe) {
        if !q.patterns.iter().all(|p| holds(g, &paths, p, &env)) {
            continue;
        }
        if !q.filter.is_empty()
            && !q
                .filter
                .iter()
                .any(|(l, r)| l.resolve(&env) == r.resolve(&env))
        {
            continue;
        }
        if let Some(neg) = &q.not_exists {
            let fresh: Vec<&'static str> = neg
                .vars()
                .into_iter()
                .filter(|v| !env.contains_key(v))
                .collect();
            let blocked = assignments(&fresh, &universe).into_iter().any(|extra| {
                let mut e = env.clone();
                e.extend(extra);
                holds(g, &paths, neg, &e)
            });
            if blocked {
                continue;
            }
        }
        rows.push(
            q.projection
                .iter()
                .map(|v| env.get(v).cloned())
                .collect::<Vec<_>>(),
        );
    }
    rows.sort();
    if q.distinct {
        rows.dedup();
    }
    rows
}

// ---------------------------------------------------------------------------
// Random graphs for serialization round trips

/// A graph of at most `max` triples mixing IRIs (some needing escapes),
/// blank nodes and string/boolean/integer literals.
pub fn random_roundtrip_graph<R: Rng>(rng: &mut R, max: usize) -> Graph {
    let iris: Vec<Term> = vec![
        Term::iri("http://ex/a"),
        Term::iri("http://ex/b"),
        Term::iri("https://purl.org/heals/feo#Autumn"),
        Term::iri("urn:x:1"),
        Term::iri("http://ex/%C3%A9t%C3%A9"),
        Term::iri("http://ex/caf\u{e9}"),
    ];
    let blanks: Vec<Term> = (0..3)
        .map(|i| Term::blank(&format!("b{i}")).unwrap())
        .collect();
    let strings = [
        "plain",
        "",
        "with \"quotes\"",
        "tab\tand\nnewline",
        "back\\slash",
        "unicode \u{1F34E} caf\u{e9}",
        "# not a comment",
    ];
    let n = rng.gen_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = if rng.gen_bool(0.2) {
            pick(rng, &blanks)
        } else {
            pick(rng, &iris)
        };
        let p = pick(rng, &iris);
        let o = match rng.gen_range(0..6) {
            0 => pick(rng, &blanks),
            1 => Term::string(strings.choose(rng).unwrap()),
            2 => Term::boolean(rng.gen_bool(0.5)),
            3 => Term::integer(rng.gen_range(-1000..1000)),
            _ => pick(rng, &iris),
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}
