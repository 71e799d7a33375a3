//! Decomposability verdicts.
//!
//! The algebra of `g` decomposes iff some pair of disjoint, nonempty, proper
//! hereditary saturated sets `(X, Y)` leaves every other vertex with at least
//! one but finitely many XY-compatible paths. Candidate pairs are scanned in
//! a fixed total order so the reported witness is reproducible.

use serde_json::{json, Value};

use crate::compatibility::{condition_holds_in, PairContext};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, VertexSet};
use crate::hsat::{enumerate_hsat_with_limit, name_ranks, set_key};
use crate::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Indecomposable,
    Decomposable { x: VertexSet, y: VertexSet },
}

impl Verdict {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Verdict::Decomposable { .. })
    }

    pub fn witness(&self) -> Option<(VertexSet, VertexSet)> {
        match *self {
            Verdict::Decomposable { x, y } => Some((x, y)),
            Verdict::Indecomposable => None,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        match self {
            Verdict::Indecomposable => json!({"decomposable": false, "witness": null}),
            Verdict::Decomposable { x, y } => json!({
                "decomposable": true,
                "witness": {"X": g.names_of(*x), "Y": g.names_of(*y)},
            }),
        }
    }
}

/// Unordered pairs of disjoint nontrivial hereditary saturated sets, with
/// `X` before `Y` in enumeration order, sorted by `|X| + |Y|`, then by the
/// sorted names of `X`, then of `Y`.
pub fn candidate_pairs(g: &Graph, cfg: &Config) -> Result<Vec<(VertexSet, VertexSet)>> {
    let all = g.all_vertices();
    let sets: Vec<VertexSet> = enumerate_hsat_with_limit(g, cfg.max_enumeration_vertices)?
        .into_iter()
        .filter(|s| !s.is_empty() && *s != all)
        .collect();
    let mut pairs = Vec::new();
    for (i, &x) in sets.iter().enumerate() {
        for &y in &sets[i + 1..] {
            if x.is_disjoint(y) {
                pairs.push((x, y));
            }
        }
    }
    if pairs.len() > 1 {
        let ranks = name_ranks(g);
        pairs.sort_by_cached_key(|&(x, y)| (x.len() + y.len(), set_key(&ranks, x).1, set_key(&ranks, y).1));
    }
    Ok(pairs)
}

fn passes(g: &Graph, (x, y): (VertexSet, VertexSet)) -> Result<bool> {
    condition_holds_in(g, &PairContext::unchecked(g, x, y))
}

/// Scans candidates in order and returns the first passing one. Errors
/// (count overflow) inside a candidate are reported as-is.
fn first_passing<F>(g: &Graph, cfg: &Config, pred: F) -> Result<Verdict>
where
    F: Fn(&Graph, (VertexSet, VertexSet)) -> Result<bool> + Sync + Send,
{
    let pairs = candidate_pairs(g, cfg)?;
    let found = exec::find_first(&pairs, cfg.parallelism, |&p| pred(g, p).unwrap_or(true));
    match found {
        None => Ok(Verdict::Indecomposable),
        Some(i) => {
            let (x, y) = pairs[i];
            // re-run to surface an error rather than treating it as a pass
            let ok = pred(g, (x, y))?;
            debug_assert!(ok);
            Ok(Verdict::Decomposable { x, y })
        }
    }
}

pub fn decide(g: &Graph) -> Result<Verdict> {
    decide_with(g, &Config::default())
}

pub fn decide_with(g: &Graph, cfg: &Config) -> Result<Verdict> {
    first_passing(g, cfg, passes)
}

/// Every candidate pair that passes, in candidate order.
pub fn all_witness_pairs(g: &Graph) -> Result<Vec<(VertexSet, VertexSet)>> {
    all_witness_pairs_with(g, &Config::default())
}

pub fn all_witness_pairs_with(g: &Graph, cfg: &Config) -> Result<Vec<(VertexSet, VertexSet)>> {
    let pairs = candidate_pairs(g, cfg)?;
    let verdicts = exec::map(&pairs, cfg.parallelism, |&p| passes(g, p));
    let mut out = Vec::new();
    for (p, ok) in pairs.into_iter().zip(verdicts) {
        if ok? {
            out.push(p);
        }
    }
    Ok(out)
}

/// The two finite-graph conditions: every vertex reaches `X ∪ Y`, and the
/// subgraph on the remaining vertices is acyclic. Applied without checking
/// for infinite emitters, where it is not a valid criterion.
pub fn row_finite_conditions(g: &Graph, x: VertexSet, y: VertexSet) -> Result<bool> {
    g.check_set(x)?;
    g.check_set(y)?;
    let union = x.union(y);
    let reaches_union = g.backward_closure(union) == g.all_vertices();
    Ok(reaches_union && g.acyclic_within(g.all_vertices().difference(union)))
}

/// Verdict from the finite row-finite criterion. Refuses graphs with an
/// infinite emitter.
pub fn decide_row_finite(g: &Graph) -> Result<Verdict> {
    decide_row_finite_with(g, &Config::default())
}

pub fn decide_row_finite_with(g: &Graph, cfg: &Config) -> Result<Verdict> {
    if let Some(v) = g.infinite_emitters().iter().next() {
        return Err(Error::InfiniteEmitter(g.name(v).to_string()));
    }
    first_passing(g, cfg, |g, (x, y)| row_finite_conditions(g, x, y))
}
