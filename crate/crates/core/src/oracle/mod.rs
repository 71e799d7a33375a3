//! Exact computation inside the Leavitt path algebra of a finite acyclic
//! graph with finite multiplicities, where the algebra is finite
//! dimensional.
//!
//! Elements are rational combinations of monomials `p q*` (a path times a
//! reversed ghost path with the same range). The normal form requires the
//! common range to be a sink: a monomial ending at a regular vertex `v` is
//! rewritten by `v = Σ e e*` over the edges leaving `v`, which terminates
//! because the graph is acyclic. Products of normal monomials are computed
//! from `e* e = r(e)` and `e* f = 0` for `e ≠ f`.

mod ideal;
mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Multiplicity, VertexKind};

pub use ideal::{ideal_span, ideal_span_of, verify_direct_sum, DirectSumReport};
pub use linalg::{SparseVec, Subspace};

/// One edge of a finite bundle; `index` runs from 1 to the multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub index: u64,
}

/// A path: a start vertex and a (possibly empty) edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<Edge>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn range(&self) -> usize {
        self.edges.last().map_or(self.start, |e| e.target)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    fn extended(&self, tail: &[Edge]) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(tail);
        Path { start: self.start, edges }
    }
}

/// `p q*` with `r(p) = r(q)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub p: Path,
    pub q: Path,
}

impl Monomial {
    pub fn range(&self) -> usize {
        self.p.range()
    }

    /// Product of two monomials whose ranges are sinks.
    fn times_normal(&self, other: &Monomial) -> Option<Monomial> {
        if self.q.is_prefix_of(&other.p) {
            // q* (q r') = r'
            let tail = &other.p.edges[self.q.len()..];
            Some(Monomial { p: self.p.extended(tail), q: other.q.clone() })
        } else if other.p.is_prefix_of(&self.q) {
            // (p' q')* p' = q'*
            let tail = &self.q.edges[other.p.len()..];
            Some(Monomial { p: self.p.clone(), q: other.q.extended(tail) })
        } else {
            None
        }
    }
}

/// Finite rational combination of normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-BigRational::one()))
    }
}

/// The finite-dimensional algebra of one graph: its normal monomial basis
/// and multiplication.
pub struct Oracle<'g> {
    graph: &'g Graph,
    out_edges: Vec<Vec<Edge>>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl fmt::Debug for Oracle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("vertices", &self.graph.vertex_count())
            .field("dimension", &self.basis.len())
            .finish()
    }
}

pub fn check_scope(g: &Graph) -> Result<()> {
    if let Some(v) = g.infinite_emitters().iter().next() {
        return Err(Error::OracleScope(format!("`{}` emits an infinite bundle", g.name(v))));
    }
    if !g.is_acyclic() {
        return Err(Error::OracleScope("graph has a cycle".into()));
    }
    Ok(())
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        check_scope(graph)?;
        let n = graph.vertex_count();
        let out_edges: Vec<Vec<Edge>> = (0..n)
            .map(|v| {
                graph
                    .out_bundles(v)
                    .flat_map(|(t, m)| {
                        let k = m.as_finite().expect("scope excludes ω");
                        (1..=k).map(move |index| Edge { source: v, target: t, index })
                    })
                    .collect()
            })
            .collect();

        // paths ending at each sink, grown backwards from the sink
        let mut ending_at: Vec<Vec<Path>> = vec![Vec::new(); n];
        for w in (0..n).filter(|&w| graph.kind(w) == VertexKind::Sink) {
            let mut all = vec![Path::trivial(w)];
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for path in &frontier {
                    for u in graph.predecessors(path.start).iter() {
                        let Some(Multiplicity::Finite(k)) = graph.multiplicity(u, path.start) else {
                            unreachable!("scope excludes ω")
                        };
                        for index in 1..=k {
                            let mut edges = vec![Edge { source: u, target: path.start, index }];
                            edges.extend_from_slice(&path.edges);
                            next.push(Path { start: u, edges });
                        }
                    }
                }
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all.sort();
            ending_at[w] = all;
        }
        let mut basis = Vec::new();
        for paths in &ending_at {
            for p in paths {
                for q in paths {
                    basis.push(Monomial { p: p.clone(), q: q.clone() });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Oracle { graph, out_edges, basis, index })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Rewrites `p q*` into normal form by expanding at regular ranges.
    pub fn normalize(&self, p: &Path, q: &Path) -> Result<Element> {
        if p.range() != q.range() {
            return Err(Error::OracleScope("monomial ranges differ".into()));
        }
        let mut out = Element::zero();
        self.expand_into(p.clone(), q.clone(), &mut out);
        Ok(out)
    }

    fn expand_into(&self, p: Path, q: Path, out: &mut Element) {
        let v = p.range();
        let edges = &self.out_edges[v];
        if edges.is_empty() {
            out.add_term(Monomial { p, q }, BigRational::one());
            return;
        }
        for e in edges {
            self.expand_into(p.extended(&[*e]), q.extended(&[*e]), out);
        }
    }

    pub fn vertex(&self, v: usize) -> Element {
        let trivial = Path::trivial(v);
        let mut out = Element::zero();
        self.expand_into(trivial.clone(), trivial, &mut out);
        out
    }

    /// `Σ_v v`, the unit.
    pub fn one(&self) -> Element {
        (0..self.graph.vertex_count()).fold(Element::zero(), |acc, v| acc.add(&self.vertex(v)))
    }

    fn edge_checked(&self, e: Edge) -> Result<Edge> {
        if self.out_edges.get(e.source).is_some_and(|es| es.contains(&e)) {
            Ok(e)
        } else {
            Err(Error::OracleScope(format!("no edge {e:?}")))
        }
    }

    pub fn edge(&self, e: Edge) -> Result<Element> {
        let e = self.edge_checked(e)?;
        self.normalize(&Path { start: e.source, edges: vec![e] }, &Path::trivial(e.target))
    }

    pub fn ghost(&self, e: Edge) -> Result<Element> {
        let e = self.edge_checked(e)?;
        self.normalize(&Path::trivial(e.target), &Path { start: e.source, edges: vec![e] })
    }

    pub fn monomial(&self, i: usize) -> Element {
        let mut out = Element::zero();
        out.add_term(self.basis[i].clone(), BigRational::one());
        out
    }

    fn check_element(&self, a: &Element) -> Result<()> {
        if a.terms.keys().all(|m| self.index.contains_key(m)) {
            Ok(())
        } else {
            Err(Error::MixedGraphs)
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = Element::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(m) = ma.times_normal(mb) {
                    // products of normal monomials are normal
                    debug_assert!(self.index.contains_key(&m));
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn to_coords(&self, a: &Element) -> Result<SparseVec> {
        a.terms.iter().map(|(m, c)| self.basis_index(m).map(|i| (i, c.clone())).ok_or(Error::MixedGraphs)).collect()
    }

    pub fn from_coords(&self, v: &SparseVec) -> Element {
        Element { terms: v.iter().map(|(&i, c)| (self.basis[i].clone(), c.clone())).collect() }
    }

    /// Product of basis monomial `i` with a coordinate vector, on either side.
    pub(crate) fn monomial_times(&self, i: usize, v: &SparseVec, monomial_on_left: bool) -> SparseVec {
        let m = &self.basis[i];
        let mut out = SparseVec::new();
        for (&j, c) in v {
            let other = &self.basis[j];
            let prod = if monomial_on_left { m.times_normal(other) } else { other.times_normal(m) };
            if let Some(p) = prod {
                let k = self.index[&p];
                let entry = out.entry(k).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    out.remove(&k);
                }
            }
        }
        out
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn oracle_basis(g: &Graph) -> Result<Vec<Monomial>> {
    Ok(Oracle::new(g)?.basis)
}

pub fn dimension(g: &Graph) -> Result<usize> {
    Ok(Oracle::new(g)?.dimension())
}

pub fn multiply(g: &Graph, a: &Element, b: &Element) -> Result<Element> {
    Oracle::new(g)?.multiply(a, b)
}
