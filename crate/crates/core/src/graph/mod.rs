//! Finite directed multigraphs whose parallel edges are stored as bundles
//! with a (possibly infinite) multiplicity.

mod canon;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_form_with_limit, CanonicalCode, DEFAULT_CANONICAL_LIMIT};
pub use text::parse_graph;

/// Hard cap on vertices per graph; vertex sets are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// Number of parallel edges in a bundle: a positive integer or ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroMultiplicity(String::new(), String::new()));
        }
        Ok(Multiplicity::Finite(n))
    }

    pub fn is_infinite(self) -> bool {
        self == Multiplicity::Infinite
    }

    pub fn as_finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }

    /// Sum with ω absorbing; `None` on 64-bit overflow.
    pub fn checked_add(self, other: Multiplicity) -> Option<Multiplicity> {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a.checked_add(b).map(Multiplicity::Finite),
            _ => Some(Multiplicity::Infinite),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Multiplicity::Finite(n) => json!(n),
            Multiplicity::Infinite => json!("inf"),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBundle {
    pub source: String,
    pub target: String,
    pub mult: Multiplicity,
}

impl EdgeBundle {
    pub fn new(source: impl Into<String>, target: impl Into<String>, mult: Multiplicity) -> Self {
        EdgeBundle { source: source.into(), target: target.into(), mult }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Sink,
    Regular,
    InfiniteEmitter,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Sink => "sink",
            VertexKind::Regular => "regular",
            VertexKind::InfiniteEmitter => "infinite_emitter",
        }
    }
}

/// A set of vertices of one graph, as a bitmask over declaration indices.
///
/// The set does not carry its graph; operations that take a graph and a set
/// check that every member is a declared vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Immutable finite multigraph. Vertex order is declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    bundles: BTreeMap<(usize, usize), Multiplicity>,
    succ: Vec<u64>,
    omega_succ: Vec<u64>,
    pred: Vec<u64>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace)
}

impl Graph {
    /// Builds and validates a graph from vertex names and named bundles.
    pub fn new<S, B>(vertices: impl IntoIterator<Item = S>, bundles: B) -> Result<Graph>
    where
        S: Into<String>,
        B: IntoIterator<Item = EdgeBundle>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let lookup = |names: &[String], n: &str| {
            names.iter().position(|m| m == n).ok_or_else(|| Error::UnknownVertex(n.to_string()))
        };
        let mut indexed = Vec::new();
        for b in bundles {
            let s = lookup(&names, &b.source)?;
            let t = lookup(&names, &b.target)?;
            if b.mult == Multiplicity::Finite(0) {
                return Err(Error::ZeroMultiplicity(b.source, b.target));
            }
            indexed.push((s, t, b.mult));
        }
        Graph::from_indexed(names, indexed)
    }

    /// Builds a graph from names and bundles addressed by vertex index.
    pub fn from_indexed<I>(names: Vec<String>, bundles: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize, Multiplicity)>,
    {
        let n = names.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { found: n, limit: MAX_VERTICES });
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidVertexName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut map = BTreeMap::new();
        let mut succ = vec![0u64; n];
        let mut omega_succ = vec![0u64; n];
        let mut pred = vec![0u64; n];
        for (s, t, mult) in bundles {
            if s >= n || t >= n {
                return Err(Error::UnknownVertex(format!("#{}", s.max(t))));
            }
            if mult == Multiplicity::Finite(0) {
                return Err(Error::ZeroMultiplicity(names[s].clone(), names[t].clone()));
            }
            if map.insert((s, t), mult).is_some() {
                return Err(Error::DuplicateBundle(names[s].clone(), names[t].clone()));
            }
            succ[s] |= 1 << t;
            pred[t] |= 1 << s;
            if mult.is_infinite() {
                omega_succ[s] |= 1 << t;
            }
        }
        Ok(Graph { names, bundles: map, succ, omega_succ, pred })
    }

    pub fn empty() -> Graph {
        Graph::from_indexed(Vec::new(), []).expect("empty graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Bundles in (source index, target index) order.
    pub fn bundles(&self) -> impl Iterator<Item = (usize, usize, Multiplicity)> + '_ {
        self.bundles.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    pub fn bundle_count(&self) -> usize {
        self.bundles.len()
    }

    pub fn multiplicity(&self, source: usize, target: usize) -> Option<Multiplicity> {
        self.bundles.get(&(source, target)).copied()
    }

    /// Outgoing bundles of `v` in target order.
    pub fn out_bundles(&self, v: usize) -> impl Iterator<Item = (usize, Multiplicity)> + '_ {
        self.bundles.range((v, 0)..(v + 1, 0)).map(|(&(_, t), &m)| (t, m))
    }

    pub fn successors(&self, v: usize) -> VertexSet {
        VertexSet(self.succ[v])
    }

    pub fn predecessors(&self, v: usize) -> VertexSet {
        VertexSet(self.pred[v])
    }

    /// Targets reached from `v` through an ω bundle.
    pub fn omega_successors(&self, v: usize) -> VertexSet {
        VertexSet(self.omega_succ[v])
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        if self.succ[v] == 0 {
            VertexKind::Sink
        } else if self.omega_succ[v] != 0 {
            VertexKind::InfiniteEmitter
        } else {
            VertexKind::Regular
        }
    }

    pub fn vertex_kind(&self, name: &str) -> Result<VertexKind> {
        Ok(self.kind(self.index_of(name)?))
    }

    pub fn is_regular(&self, v: usize) -> bool {
        self.kind(v) == VertexKind::Regular
    }

    pub fn has_infinite_emitter(&self) -> bool {
        self.omega_succ.iter().any(|&m| m != 0)
    }

    pub fn infinite_emitters(&self) -> VertexSet {
        (0..self.vertex_count()).filter(|&v| self.omega_succ[v] != 0).collect()
    }

    /// Checks that every member of `set` is a declared vertex.
    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        if set.is_subset(self.all_vertices()) {
            Ok(())
        } else {
            let bad = set.difference(self.all_vertices()).iter().next().unwrap_or(0);
            Err(Error::UnknownVertex(format!("#{bad}")))
        }
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for n in names {
            set.insert(self.index_of(n.as_ref())?);
        }
        Ok(set)
    }

    /// Member names sorted lexicographically.
    pub fn names_of(&self, set: VertexSet) -> Vec<&str> {
        let mut out: Vec<&str> = set.iter().map(|v| self.names[v].as_str()).collect();
        out.sort_unstable();
        out
    }

    pub fn set_json(&self, set: VertexSet) -> Value {
        json!(self.names_of(set))
    }

    /// Vertices reachable from `v` by a path of length ≥ 0.
    pub fn reachable_from(&self, v: usize) -> VertexSet {
        self.forward_closure(VertexSet::singleton(v))
    }

    /// Smallest superset of `set` closed under successors.
    pub fn forward_closure(&self, set: VertexSet) -> VertexSet {
        let mut seen = set.0;
        let mut frontier = set.0;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= self.succ[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    /// Vertices from which some member of `set` is reachable.
    pub fn backward_closure(&self, set: VertexSet) -> VertexSet {
        let mut seen = set.0;
        let mut frontier = set.0;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= self.pred[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    pub fn reaches_index(&self, v: usize, w: usize) -> bool {
        self.reachable_from(v).contains(w)
    }

    /// True iff `w = v` or there is a directed path from `v` to `w`.
    pub fn reaches(&self, v: &str, w: &str) -> Result<bool> {
        Ok(self.reaches_index(self.index_of(v)?, self.index_of(w)?))
    }

    /// Induced subgraph on `set`, keeping declaration order.
    pub fn restricted(&self, set: VertexSet) -> Result<Graph> {
        self.check_set(set)?;
        let keep: Vec<usize> = set.iter().collect();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let bundles = self
            .bundles()
            .filter(|&(s, t, _)| set.contains(s) && set.contains(t))
            .map(|(s, t, m)| (new_index[s], new_index[t], m));
        Graph::from_indexed(names, bundles)
    }

    pub fn restricted_subgraph<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Graph> {
        self.restricted(self.vertex_set(names)?)
    }

    /// Disjoint union; vertices of `self` come first.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        for n in &other.names {
            if self.names.contains(n) {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        let offset = self.vertex_count();
        let names = self.names.iter().chain(&other.names).cloned().collect();
        let bundles = self.bundles().chain(other.bundles().map(|(s, t, m)| (s + offset, t + offset, m)));
        Graph::from_indexed(names, bundles)
    }

    /// Copy with every vertex name prefixed.
    pub fn with_prefix(&self, prefix: &str) -> Result<Graph> {
        let names = self.names.iter().map(|n| format!("{prefix}{n}")).collect();
        Graph::from_indexed(names, self.bundles())
    }

    /// Copy with vertices renamed and reordered: vertex `v` becomes position
    /// `perm[v]` and is called `new_names[perm[v]]`.
    pub fn permuted(&self, perm: &[usize], new_names: &[String]) -> Result<Graph> {
        assert_eq!(perm.len(), self.vertex_count());
        let bundles = self.bundles().map(|(s, t, m)| (perm[s], perm[t], m));
        Graph::from_indexed(new_names.to_vec(), bundles)
    }

    /// All simple cycles as vertex sequences, each listed once starting at
    /// its smallest vertex index.
    pub fn find_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut cycles = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            stack.clear();
            stack.push(start);
            self.cycle_dfs(start, start, &mut stack, 1u64 << start, &mut cycles);
        }
        cycles
    }

    fn cycle_dfs(&self, start: usize, v: usize, stack: &mut Vec<usize>, on_stack: u64, out: &mut Vec<Vec<usize>>) {
        for w in self.successors(v).iter() {
            if w == start {
                out.push(stack.clone());
            } else if w > start && on_stack >> w & 1 == 0 {
                stack.push(w);
                self.cycle_dfs(start, w, stack, on_stack | 1 << w, out);
                stack.pop();
            }
        }
    }

    /// Whether some vertex of `cycle` emits an edge other than the cycle's
    /// own edge out of it. A parallel edge alongside a cycle edge is an exit.
    pub fn has_exit(&self, cycle: &[usize]) -> bool {
        let k = cycle.len();
        (0..k).any(|i| {
            let v = cycle[i];
            let next = cycle[(i + 1) % k];
            !self.successors(v).difference(VertexSet::singleton(next)).is_empty()
                || self.multiplicity(v, next) != Some(Multiplicity::Finite(1))
        })
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic_within(self.all_vertices())
    }

    /// Whether the subgraph induced on `set` has no directed cycle.
    pub fn acyclic_within(&self, set: VertexSet) -> bool {
        // Kahn's algorithm on the induced subgraph.
        let mut remaining = set;
        loop {
            let sources: VertexSet =
                remaining.iter().filter(|&v| self.predecessors(v).intersection(remaining).is_empty()).collect();
            if sources.is_empty() {
                return remaining.is_empty();
            }
            remaining = remaining.difference(sources);
        }
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .bundles()
            .map(|(s, t, m)| json!({"source": self.names[s], "target": self.names[t], "mult": m.to_json()}))
            .collect();
        json!({"vertices": self.names, "edges": edges})
    }

    /// Graph text format: `vertex` lines then `edge` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.names {
            out.push_str("vertex ");
            out.push_str(n);
            out.push('\n');
        }
        for (s, t, m) in self.bundles() {
            out.push_str(&format!("edge {} {} {}\n", self.names[s], self.names[t], m));
        }
        out
    }

    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph \"{graph_name}\" {{\n");
        for n in &self.names {
            out.push_str(&format!("  \"{n}\";\n"));
        }
        for (s, t, m) in self.bundles() {
            let label = match m {
                Multiplicity::Finite(1) => String::new(),
                Multiplicity::Finite(k) => format!(" [label=\"({k})\"]"),
                Multiplicity::Infinite => " [label=\"(∞)\"]".to_string(),
            };
            out.push_str(&format!("  \"{}\" -> \"{}\"{label};\n", self.names[s], self.names[t]));
        }
        out.push_str("}\n");
        out
    }
}
