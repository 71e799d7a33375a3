//! XY-compatible edges and paths.
//!
//! For disjoint hereditary saturated `X`, `Y`, an edge is XY-compatible
//! unless it runs from a breaking vertex of `X` into `X` (or likewise for
//! `Y`). Compatible paths start outside `X ∪ Y`, keep every source outside,
//! and end in `X ∪ Y`; they are counted on a [`ReducedGraph`] where `X ∪ Y`
//! collapses to one absorbing vertex ⊤.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Multiplicity, VertexSet};
use crate::hsat::{breaking, require_hsat};

/// A validated disjoint pair with its breaking-vertex sets.
#[derive(Debug, Clone, Copy)]
pub struct PairContext {
    pub x: VertexSet,
    pub y: VertexSet,
    pub bx: VertexSet,
    pub by: VertexSet,
}

impl PairContext {
    pub fn new(g: &Graph, x: VertexSet, y: VertexSet) -> Result<Self> {
        require_hsat(g, x)?;
        require_hsat(g, y)?;
        if !x.is_disjoint(y) {
            return Err(Error::InvalidPair("X and Y intersect".into()));
        }
        Ok(Self::unchecked(g, x, y))
    }

    pub(crate) fn unchecked(g: &Graph, x: VertexSet, y: VertexSet) -> Self {
        PairContext { x, y, bx: breaking(g, x), by: breaking(g, y) }
    }

    pub fn union(&self) -> VertexSet {
        self.x.union(self.y)
    }

    pub fn compatible(&self, source: usize, target: usize) -> bool {
        !(self.bx.contains(source) && self.x.contains(target)) && !(self.by.contains(source) && self.y.contains(target))
    }
}

pub fn is_compatible_bundle(g: &Graph, x: VertexSet, y: VertexSet, source: usize, target: usize) -> Result<bool> {
    let ctx = PairContext::new(g, x, y)?;
    if source >= g.vertex_count() || target >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", source.max(target))));
    }
    if g.multiplicity(source, target).is_none() {
        return Err(Error::InvalidPair(format!("no bundle {} -> {}", g.name(source), g.name(target))));
    }
    Ok(ctx.compatible(source, target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReducedTarget {
    /// Position in [`ReducedGraph::base`].
    Base(usize),
    Top,
}

/// Compatible bundles with sources outside `X ∪ Y`; targets inside `X ∪ Y`
/// are merged into ⊤ with multiplicities summed (ω absorbing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    base: Vec<usize>,
    bundles: BTreeMap<(usize, ReducedTarget), Multiplicity>,
}

/// Number of compatible paths from a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathCount {
    Finite(u64),
    Infinite,
}

impl fmt::Display for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathCount::Finite(n) => write!(f, "{n}"),
            PathCount::Infinite => f.write_str("ω"),
        }
    }
}

impl PathCount {
    /// At least one but finitely many.
    pub fn is_positive_finite(self) -> bool {
        matches!(self, PathCount::Finite(n) if n >= 1)
    }
}

impl ReducedGraph {
    pub fn build(g: &Graph, ctx: &PairContext) -> Result<ReducedGraph> {
        let outside = g.all_vertices().difference(ctx.union());
        let base: Vec<usize> = outside.iter().collect();
        let mut position = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in base.iter().enumerate() {
            position[v] = i;
        }
        let mut bundles: BTreeMap<(usize, ReducedTarget), Multiplicity> = BTreeMap::new();
        for (s, t, m) in g.bundles() {
            if !outside.contains(s) || !ctx.compatible(s, t) {
                continue;
            }
            let target = if outside.contains(t) { ReducedTarget::Base(position[t]) } else { ReducedTarget::Top };
            let entry = bundles.entry((position[s], target)).or_insert(Multiplicity::Finite(0));
            *entry =
                if *entry == Multiplicity::Finite(0) { m } else { entry.checked_add(m).ok_or(Error::CountOverflow)? };
        }
        Ok(ReducedGraph { base, bundles })
    }

    /// Original vertex indices of the non-⊤ vertices, in declaration order.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn bundles(&self) -> impl Iterator<Item = (usize, ReducedTarget, Multiplicity)> + '_ {
        self.bundles.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    /// Compatible path counts for every base vertex, in `base()` order.
    ///
    /// Only the useful part matters: vertices that reach ⊤. A vertex has
    /// infinitely many paths iff it reaches, inside the useful part, a
    /// directed cycle or an ω bundle; otherwise the count is the sum over
    /// useful bundles of multiplicity times the successor's count, with
    /// ⊤ counting 1.
    pub fn path_counts(&self) -> Result<Vec<PathCount>> {
        let k = self.base.len();
        let mut succ = vec![0u64; k];
        let mut pred = vec![0u64; k];
        let mut to_top = 0u64;
        for (s, t, _) in self.bundles() {
            match t {
                ReducedTarget::Base(t) => {
                    succ[s] |= 1 << t;
                    pred[t] |= 1 << s;
                }
                ReducedTarget::Top => to_top |= 1 << s,
            }
        }
        let useful = closure(to_top, &pred);

        // Seeds of infinitude inside the useful part.
        let mut seeds = 0u64;
        for (s, t, m) in self.bundles() {
            if useful >> s & 1 == 0 || !m.is_infinite() {
                continue;
            }
            let lands_useful = match t {
                ReducedTarget::Top => true,
                ReducedTarget::Base(t) => useful >> t & 1 == 1,
            };
            if lands_useful {
                seeds |= 1 << s;
            }
        }
        let useful_succ: Vec<u64> = succ.iter().map(|&m| m & useful).collect();
        for v in bits(useful) {
            // on a cycle: v reaches itself through at least one edge
            if closure(useful_succ[v], &useful_succ) >> v & 1 == 1 {
                seeds |= 1 << v;
            }
        }
        let useful_pred: Vec<u64> = pred.iter().map(|&m| m & useful).collect();
        let infinite = closure(seeds, &useful_pred) & useful;

        let mut memo: Vec<Option<PathCount>> = vec![None; k];
        for (v, slot) in memo.iter_mut().enumerate() {
            if useful >> v & 1 == 0 {
                *slot = Some(PathCount::Finite(0));
            } else if infinite >> v & 1 == 1 {
                *slot = Some(PathCount::Infinite);
            }
        }
        for v in 0..k {
            self.count_from(v, &mut memo)?;
        }
        Ok(memo.into_iter().map(|c| c.expect("all counts filled")).collect())
    }

    // Recursion over an acyclic part with finite multiplicities only.
    fn count_from(&self, v: usize, memo: &mut [Option<PathCount>]) -> Result<PathCount> {
        if let Some(c) = memo[v] {
            return Ok(c);
        }
        let mut total: u64 = 0;
        let outgoing: Vec<(ReducedTarget, Multiplicity)> = self
            .bundles
            .range((v, ReducedTarget::Base(0))..=(v, ReducedTarget::Top))
            .map(|(&(_, t), &m)| (t, m))
            .collect();
        for (t, m) in outgoing {
            let sub = match t {
                ReducedTarget::Top => 1,
                ReducedTarget::Base(u) => match self.count_from(u, memo)? {
                    PathCount::Finite(c) => c,
                    PathCount::Infinite => unreachable!("finite vertex reaches an infinite one"),
                },
            };
            if sub == 0 {
                continue;
            }
            let m = m.as_finite().expect("ω bundles in the useful part are seeds");
            let term = m.checked_mul(sub).ok_or(Error::CountOverflow)?;
            total = total.checked_add(term).ok_or(Error::CountOverflow)?;
        }
        let c = PathCount::Finite(total);
        memo[v] = Some(c);
        Ok(c)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    VertexSet::from_bits(mask).iter()
}

/// Union of `start` with everything reachable from it along `adj`.
fn closure(start: u64, adj: &[u64]) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

pub fn build_reduced(g: &Graph, x: VertexSet, y: VertexSet) -> Result<ReducedGraph> {
    ReducedGraph::build(g, &PairContext::new(g, x, y)?)
}

/// Number of XY-compatible paths starting at `v ∉ X ∪ Y`.
pub fn count_compatible_paths(g: &Graph, x: VertexSet, y: VertexSet, v: usize) -> Result<PathCount> {
    let ctx = PairContext::new(g, x, y)?;
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    if ctx.union().contains(v) {
        return Err(Error::VertexInPair(g.name(v).to_string()));
    }
    let reduced = ReducedGraph::build(g, &ctx)?;
    let pos = reduced.base.iter().position(|&b| b == v).expect("v is outside X ∪ Y");
    Ok(reduced.path_counts()?[pos])
}

/// Whether every vertex outside `X ∪ Y` starts at least one but finitely
/// many XY-compatible paths. `X` and `Y` must be nonempty, proper,
/// hereditary saturated and disjoint.
pub fn condition_holds(g: &Graph, x: VertexSet, y: VertexSet) -> Result<bool> {
    let all = g.all_vertices();
    for s in [x, y] {
        if s.is_empty() || s == all {
            return Err(Error::InvalidPair("X and Y must be nonempty proper subsets".into()));
        }
    }
    let ctx = PairContext::new(g, x, y)?;
    condition_holds_in(g, &ctx)
}

pub(crate) fn condition_holds_in(g: &Graph, ctx: &PairContext) -> Result<bool> {
    let reduced = ReducedGraph::build(g, ctx)?;
    Ok(reduced.path_counts()?.into_iter().all(PathCount::is_positive_finite))
}
