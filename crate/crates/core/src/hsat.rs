//! Hereditary and saturated vertex sets, breaking vertices, admissible pairs
//! and the lattice operations on admissible pairs.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;

/// Every edge leaving `set` lands back in `set`.
pub fn is_hereditary(g: &Graph, set: VertexSet) -> Result<bool> {
    g.check_set(set)?;
    Ok(hereditary(g, set))
}

/// No regular vertex outside `set` has all of its edge targets inside `set`.
pub fn is_saturated(g: &Graph, set: VertexSet) -> Result<bool> {
    g.check_set(set)?;
    Ok(saturated(g, set))
}

pub(crate) fn hereditary(g: &Graph, set: VertexSet) -> bool {
    set.iter().all(|v| g.successors(v).is_subset(set))
}

pub(crate) fn saturated(g: &Graph, set: VertexSet) -> bool {
    g.all_vertices().difference(set).iter().all(|v| !g.is_regular(v) || !g.successors(v).is_subset(set))
}

pub(crate) fn is_hsat(g: &Graph, set: VertexSet) -> bool {
    hereditary(g, set) && saturated(g, set)
}

pub(crate) fn require_hsat(g: &Graph, set: VertexSet) -> Result<()> {
    g.check_set(set)?;
    if is_hsat(g, set) {
        Ok(())
    } else {
        Err(Error::NotHereditarySaturated(format!("{:?}", g.names_of(set))))
    }
}

/// Smallest hereditary and saturated superset of `set`.
pub fn hsat_closure(g: &Graph, set: VertexSet) -> Result<VertexSet> {
    g.check_set(set)?;
    let mut current = set;
    loop {
        let mut next = g.forward_closure(current);
        for v in g.all_vertices().difference(next).iter() {
            if g.is_regular(v) && g.successors(v).is_subset(next) {
                next.insert(v);
            }
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// All hereditary saturated sets (including ∅ and the full vertex set),
/// sorted by size and then lexicographically by sorted member names.
pub fn enumerate_hsat(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_hsat_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_hsat_with_limit(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooManyVertices { found: n, limit });
    }
    let ranks = name_ranks(g);
    let mut out: Vec<VertexSet> =
        (0..1u64 << n).map(VertexSet::from_bits).filter(|&s| hereditary(g, s) && saturated(g, s)).collect();
    out.sort_by_cached_key(|&s| set_key(&ranks, s));
    Ok(out)
}

/// Rank of each vertex in lexicographic name order.
pub(crate) fn name_ranks(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| g.name(a).cmp(g.name(b)));
    let mut ranks = vec![0; order.len()];
    for (rank, v) in order.into_iter().enumerate() {
        ranks[v] = rank;
    }
    ranks
}

/// Sort key (size, sorted name ranks); comparing ranks is comparing names.
pub(crate) fn set_key(ranks: &[usize], s: VertexSet) -> (usize, Vec<usize>) {
    let mut r: Vec<usize> = s.iter().map(|v| ranks[v]).collect();
    r.sort_unstable();
    (r.len(), r)
}

/// Infinite emitters outside `set` with a positive, finite number of edges
/// landing outside `set`.
pub fn breaking_vertices(g: &Graph, set: VertexSet) -> Result<VertexSet> {
    require_hsat(g, set)?;
    Ok(breaking(g, set))
}

pub(crate) fn breaking(g: &Graph, set: VertexSet) -> VertexSet {
    g.infinite_emitters()
        .difference(set)
        .iter()
        .filter(|&v| !g.successors(v).is_subset(set) && g.omega_successors(v).is_subset(set))
        .collect()
}

/// `(H, S)` with `H` hereditary saturated and `S ⊆ B_H`. Validated on
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    h: VertexSet,
    s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<Self> {
        g.check_set(h)?;
        g.check_set(s)?;
        if !is_hsat(g, h) {
            return Err(Error::NotAdmissible(format!("H = {:?} is not hereditary and saturated", g.names_of(h))));
        }
        if !s.is_subset(breaking(g, h)) {
            return Err(Error::NotAdmissible(format!(
                "S = {:?} is not contained in the breaking vertices {:?}",
                g.names_of(s),
                g.names_of(breaking(g, h))
            )));
        }
        Ok(AdmissiblePair { h, s })
    }

    /// `(H, B_H)`.
    pub fn with_all_breaking(g: &Graph, h: VertexSet) -> Result<Self> {
        require_hsat(g, h)?;
        Ok(AdmissiblePair { h, s: breaking(g, h) })
    }

    pub fn bottom() -> Self {
        AdmissiblePair { h: VertexSet::EMPTY, s: VertexSet::EMPTY }
    }

    pub fn top(g: &Graph) -> Self {
        AdmissiblePair { h: g.all_vertices(), s: VertexSet::EMPTY }
    }

    pub fn h(&self) -> VertexSet {
        self.h
    }

    pub fn s(&self) -> VertexSet {
        self.s
    }

    pub fn is_top(&self, g: &Graph) -> bool {
        self.h == g.all_vertices() && self.s.is_empty()
    }

    pub fn is_bottom(&self) -> bool {
        self.h.is_empty() && self.s.is_empty()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        json!({"H": g.names_of(self.h), "S": g.names_of(self.s)})
    }

    fn revalidate(&self, g: &Graph) -> Result<()> {
        AdmissiblePair::new(g, self.h, self.s).map(|_| ())
    }
}

/// Every admissible pair of `g`: each hereditary saturated `H` with every
/// subset of `B_H`.
pub fn all_admissible_pairs(g: &Graph) -> Result<Vec<AdmissiblePair>> {
    let mut out = Vec::new();
    for h in enumerate_hsat(g)? {
        let b = breaking(g, h);
        let members: Vec<usize> = b.iter().collect();
        for mask in 0..1u64 << members.len() {
            let s: VertexSet =
                members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            out.push(AdmissiblePair { h, s });
        }
    }
    Ok(out)
}

/// Greatest lower bound: `H = X ∩ Y`, `S = (S_X ∪ X) ∩ (S_Y ∪ Y) ∩ B_{X∩Y}`.
pub fn meet(g: &Graph, p: &AdmissiblePair, q: &AdmissiblePair) -> Result<AdmissiblePair> {
    p.revalidate(g)?;
    q.revalidate(g)?;
    let h = p.h.intersection(q.h);
    let s = p.s.union(p.h).intersection(q.s.union(q.h)).intersection(breaking(g, h));
    Ok(AdmissiblePair { h, s })
}

/// Least upper bound. `H` is the union of the chain `X_0 = X ∪ Y`,
/// `X_{n+1} = X_n ∪ {regular v : r(s⁻¹(v)) ⊆ X_n} ∪ {v ∈ S_X ∪ S_Y : r(s⁻¹(v)) ⊆ X_n}`,
/// and `S = (S_X ∪ S_Y) ∩ B_H`.
pub fn join(g: &Graph, p: &AdmissiblePair, q: &AdmissiblePair) -> Result<AdmissiblePair> {
    p.revalidate(g)?;
    q.revalidate(g)?;
    let selected = p.s.union(q.s);
    let mut current = p.h.union(q.h);
    loop {
        let mut next = current;
        for v in g.all_vertices().difference(current).iter() {
            let eligible = g.is_regular(v) || selected.contains(v);
            if eligible && g.successors(v).is_subset(current) {
                next.insert(v);
            }
        }
        if next == current {
            break;
        }
        current = next;
    }
    Ok(AdmissiblePair { h: current, s: selected.intersection(breaking(g, current)) })
}
