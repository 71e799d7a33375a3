//! Quotient graphs by admissible pairs and the recursive decomposition into
//! indecomposable pieces.

use serde_json::{json, Value};

use crate::decision::{decide_with, Verdict};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{canonical_form_with_limit, CanonicalCode, Graph, VertexSet};
use crate::hsat::{breaking, AdmissiblePair};
use crate::Config;

pub const PRIME_SUFFIX: &str = "_prime";

/// `E ∖ (H, S)`: drop `H` and every edge into it, then add a sink `v_prime`
/// for each breaking vertex `v ∈ B_H ∖ S`, fed by a copy of every bundle
/// into `v`.
pub fn quotient_graph(g: &Graph, h: VertexSet, s: VertexSet) -> Result<Graph> {
    let pair = AdmissiblePair::new(g, h, s)?;
    quotient_by(g, &pair)
}

pub fn quotient_by(g: &Graph, pair: &AdmissiblePair) -> Result<Graph> {
    let h = pair.h();
    let primed = breaking(g, h).difference(pair.s());
    let kept: Vec<usize> = g.all_vertices().difference(h).iter().collect();
    let mut names: Vec<String> = kept.iter().map(|&v| g.name(v).to_string()).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut prime_index = vec![usize::MAX; g.vertex_count()];
    for v in primed.iter() {
        let name = format!("{}{PRIME_SUFFIX}", g.name(v));
        if g.names().contains(&name) {
            return Err(Error::NameCollision(name));
        }
        prime_index[v] = names.len();
        names.push(name);
    }
    let mut bundles = Vec::new();
    for (src, dst, m) in g.bundles() {
        if h.contains(dst) {
            continue;
        }
        bundles.push((index[src], index[dst], m));
        if primed.contains(dst) {
            bundles.push((index[src], prime_index[dst], m));
        }
    }
    Graph::from_indexed(names, bundles)
}

/// Binary tree of quotient graphs. Leaves are indecomposable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub graph: Graph,
    /// Witness `(X, Y)` in `graph`; `None` at leaves.
    pub witness: Option<(VertexSet, VertexSet)>,
    /// `[graph ∖ (X, B_X), graph ∖ (Y, B_Y)]`, empty at leaves.
    pub children: Vec<DecompositionTree>,
}

impl DecompositionTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Leaf graphs, left to right.
    pub fn leaves(&self) -> Vec<&Graph> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Graph>) {
        if self.is_leaf() {
            out.push(&self.graph);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DecompositionTree::depth).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let witness = match self.witness {
            Some((x, y)) => json!({"X": self.graph.names_of(x), "Y": self.graph.names_of(y)}),
            None => Value::Null,
        };
        let children: Vec<Value> = self.children.iter().map(DecompositionTree::to_json).collect();
        json!({"graph": self.graph.to_json(), "witness": witness, "children": children})
    }
}

pub fn decompose(g: &Graph) -> Result<DecompositionTree> {
    decompose_with(g, &Config::default())
}

pub fn decompose_with(g: &Graph, cfg: &Config) -> Result<DecompositionTree> {
    match decide_with(g, cfg)? {
        Verdict::Indecomposable => Ok(DecompositionTree { graph: g.clone(), witness: None, children: Vec::new() }),
        Verdict::Decomposable { x, y } => split(g, x, y, cfg),
    }
}

/// Splits at the given witness, then decomposes both quotients with the
/// default witness order.
pub fn decompose_at(g: &Graph, x: VertexSet, y: VertexSet, cfg: &Config) -> Result<DecompositionTree> {
    if !crate::compatibility::condition_holds(g, x, y)? {
        return Err(Error::InvalidPair("pair does not satisfy the decomposition condition".into()));
    }
    split(g, x, y, cfg)
}

fn split(g: &Graph, x: VertexSet, y: VertexSet, cfg: &Config) -> Result<DecompositionTree> {
    let qx = quotient_by(g, &AdmissiblePair::with_all_breaking(g, x)?)?;
    let qy = quotient_by(g, &AdmissiblePair::with_all_breaking(g, y)?)?;
    debug_assert!(qx.vertex_count() < g.vertex_count() && qy.vertex_count() < g.vertex_count());
    let (left, right) = exec::join(cfg.parallelism, || decompose_with(&qx, cfg), || decompose_with(&qy, cfg));
    Ok(DecompositionTree { graph: g.clone(), witness: Some((x, y)), children: vec![left?, right?] })
}

/// Canonical codes of the indecomposable components, sorted (a multiset).
pub fn components(g: &Graph) -> Result<Vec<CanonicalCode>> {
    components_with(g, &Config::default())
}

pub fn components_with(g: &Graph, cfg: &Config) -> Result<Vec<CanonicalCode>> {
    tree_components(&decompose_with(g, cfg)?, cfg)
}

pub fn tree_components(tree: &DecompositionTree, cfg: &Config) -> Result<Vec<CanonicalCode>> {
    let mut codes = tree
        .leaves()
        .into_iter()
        .map(|leaf| canonical_form_with_limit(leaf, cfg.max_canonical_vertices))
        .collect::<Result<Vec<_>>>()?;
    codes.sort();
    Ok(codes)
}
