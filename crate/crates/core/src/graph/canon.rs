use std::cmp::Ordering;
use std::fmt;

use super::{Graph, Multiplicity};
use crate::error::{Error, Result};

pub const DEFAULT_CANONICAL_LIMIT: usize = 12;

/// Isomorphism-invariant code of a multigraph with multiplicity labels.
/// Vertex names are not part of the code.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

fn label(m: Option<Multiplicity>) -> u64 {
    match m {
        None => 0,
        Some(Multiplicity::Finite(k)) => k,
        Some(Multiplicity::Infinite) => u64::MAX,
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode> {
    canonical_form_with_limit(g, DEFAULT_CANONICAL_LIMIT)
}

/// Smallest adjacency code over all vertex orderings that list vertices by
/// nondecreasing degree invariant, found by backtracking with prefix pruning.
pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalCode> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooManyVertices { found: n, limit });
    }
    let adj: Vec<Vec<u64>> = (0..n).map(|s| (0..n).map(|t| label(g.multiplicity(s, t))).collect()).collect();
    let invariants: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut outs: Vec<u64> = (0..n).filter(|&t| t != v).map(|t| adj[v][t]).filter(|&m| m != 0).collect();
            let mut ins: Vec<u64> = (0..n).filter(|&s| s != v).map(|s| adj[s][v]).filter(|&m| m != 0).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            let mut inv = vec![adj[v][v], outs.len() as u64, ins.len() as u64];
            inv.extend(outs);
            inv.extend(ins);
            inv
        })
        .collect();
    let mut slot_invariants = invariants.clone();
    slot_invariants.sort();

    let mut header = vec![n as u64, g.bundle_count() as u64];
    for inv in &slot_invariants {
        header.push(inv.len() as u64);
        header.extend(inv);
    }

    let mut search = Search {
        adj: &adj,
        invariants: &invariants,
        slot_invariants: &slot_invariants,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        current: Vec::new(),
        best: None,
    };
    search.descend(false);
    let body = search.best.unwrap_or_default();

    let mut bytes = Vec::with_capacity((header.len() + body.len()) * 8);
    for word in header.iter().chain(&body) {
        bytes.extend_from_slice(&word.to_be_bytes());
    }
    Ok(CanonicalCode(bytes))
}

struct Search<'a> {
    adj: &'a [Vec<u64>],
    invariants: &'a [Vec<u64>],
    slot_invariants: &'a [Vec<u64>],
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u64>,
    best: Option<Vec<u64>>,
}

impl Search<'_> {
    /// `ahead` is true once the current prefix is already strictly smaller
    /// than the best code's prefix.
    fn descend(&mut self, ahead: bool) {
        let k = self.order.len();
        let n = self.adj.len();
        if k == n {
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.invariants[v] != self.slot_invariants[k] {
                continue;
            }
            let mark = self.current.len();
            self.current.push(self.adj[v][v]);
            for j in 0..k {
                let u = self.order[j];
                self.current.push(self.adj[u][v]);
                self.current.push(self.adj[v][u]);
            }
            let cmp = match (&self.best, ahead) {
                (Some(best), false) => self.current[mark..].cmp(&best[mark..self.current.len()]),
                _ => Ordering::Less,
            };
            if cmp != Ordering::Greater {
                self.used[v] = true;
                self.order.push(v);
                self.descend(ahead || cmp == Ordering::Less);
                self.order.pop();
                self.used[v] = false;
            }
            self.current.truncate(mark);
        }
    }
}
