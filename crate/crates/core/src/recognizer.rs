//! Recognition of the standard graph families whose algebras have a name.

use std::fmt;

use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::{Graph, Multiplicity, VertexSet};
use crate::quotient::decompose_with;
use crate::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraDescriptor {
    /// `M_size(K)`
    MatrixAlgebra(u64),
    /// `K[x, x⁻¹]`
    LaurentPolynomials,
    /// `M_size(K[x, x⁻¹])`
    MatrixOverLaurent(u64),
    /// `L_K(1, n)`
    LeavittAlgebra(u64),
    /// `M_size(L_K(1, n))`
    MatrixOverLeavitt {
        size: u64,
        n: u64,
    },
    Unknown,
}

impl AlgebraDescriptor {
    pub fn to_json(&self) -> Value {
        match *self {
            AlgebraDescriptor::MatrixAlgebra(size) => json!({"family": "matrix", "params": {"size": size}}),
            AlgebraDescriptor::LaurentPolynomials => json!({"family": "laurent", "params": {}}),
            AlgebraDescriptor::MatrixOverLaurent(size) => {
                json!({"family": "matrix_over_laurent", "params": {"size": size}})
            }
            AlgebraDescriptor::LeavittAlgebra(n) => json!({"family": "leavitt", "params": {"n": n}}),
            AlgebraDescriptor::MatrixOverLeavitt { size, n } => {
                json!({"family": "matrix_over_leavitt", "params": {"size": size, "n": n}})
            }
            AlgebraDescriptor::Unknown => json!({"family": "unknown", "params": {}}),
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraDescriptor::MatrixAlgebra(k) => write!(f, "M_{k}(K)"),
            AlgebraDescriptor::LaurentPolynomials => f.write_str("K[x,x^-1]"),
            AlgebraDescriptor::MatrixOverLaurent(k) => write!(f, "M_{k}(K[x,x^-1])"),
            AlgebraDescriptor::LeavittAlgebra(n) => write!(f, "L_K(1,{n})"),
            AlgebraDescriptor::MatrixOverLeavitt { size, n } => write!(f, "M_{size}(L_K(1,{n}))"),
            AlgebraDescriptor::Unknown => f.write_str("unknown"),
        }
    }
}

/// One weak component (edge directions ignored). The empty graph counts as
/// connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = VertexSet::singleton(0);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier.iter() {
            next = next.union(g.successors(v)).union(g.predecessors(v));
        }
        frontier = next.difference(seen);
        seen = seen.union(next);
    }
    seen == g.all_vertices()
}

/// Every vertex reaches every vertex.
pub fn is_directly_connected(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|v| g.reachable_from(v) == g.all_vertices())
}

/// If `g` is a directed path through all vertices using only single edges
/// (plus possibly extra structure at the last vertex, checked by callers),
/// returns the vertex order.
fn path_order(g: &Graph, allow_last_loop: bool) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let loops = (0..n).filter(|&v| g.multiplicity(v, v).is_some()).count();
    let expected_bundles = n - 1 + usize::from(allow_last_loop);
    if g.bundle_count() != expected_bundles || loops != usize::from(allow_last_loop) {
        return None;
    }
    let start = (0..n).find(|&v| g.predecessors(v).difference(VertexSet::singleton(v)).is_empty())?;
    let mut order = vec![start];
    let mut seen = VertexSet::singleton(start);
    while order.len() < n {
        let v = *order.last().unwrap();
        let next = g.successors(v).difference(VertexSet::singleton(v));
        if next.len() != 1 {
            return None;
        }
        let w = next.iter().next().unwrap();
        if seen.contains(w) || g.multiplicity(v, w) != Some(Multiplicity::Finite(1)) {
            return None;
        }
        seen.insert(w);
        order.push(w);
    }
    Some(order)
}

pub fn recognize(g: &Graph) -> AlgebraDescriptor {
    let n = g.vertex_count();
    if n == 0 {
        return AlgebraDescriptor::Unknown;
    }
    // line graph with n vertices
    if path_order(g, false).is_some() {
        return AlgebraDescriptor::MatrixAlgebra(n as u64);
    }
    // one vertex with loops
    if n == 1 {
        return match g.multiplicity(0, 0) {
            Some(Multiplicity::Finite(1)) => AlgebraDescriptor::LaurentPolynomials,
            Some(Multiplicity::Finite(m)) => AlgebraDescriptor::LeavittAlgebra(m),
            _ => AlgebraDescriptor::Unknown,
        };
    }
    // a single cycle without exits through every vertex
    if g.bundle_count() == n
        && (0..n).all(|v| g.successors(v).len() == 1 && g.out_bundles(v).all(|(_, m)| m == Multiplicity::Finite(1)))
        && is_directly_connected(g)
    {
        return AlgebraDescriptor::MatrixOverLaurent(n as u64);
    }
    // line ending in a rose
    if let Some(order) = path_order(g, true) {
        let last = *order.last().unwrap();
        if let Some(Multiplicity::Finite(m)) = g.multiplicity(last, last) {
            if m >= 2 {
                return AlgebraDescriptor::MatrixOverLeavitt { size: n as u64, n: m };
            }
        }
    }
    // two vertices, one finite parallel bundle
    if n == 2 && g.bundle_count() == 1 {
        let (s, t, m) = g.bundles().next().unwrap();
        if s != t {
            if let Multiplicity::Finite(m) = m {
                return AlgebraDescriptor::MatrixAlgebra(m + 1);
            }
        }
    }
    AlgebraDescriptor::Unknown
}

/// Descriptors of the leaves of the decomposition, left to right.
pub fn describe_decomposition(g: &Graph) -> Result<Vec<AlgebraDescriptor>> {
    describe_decomposition_with(g, &Config::default())
}

pub fn describe_decomposition_with(g: &Graph, cfg: &Config) -> Result<Vec<AlgebraDescriptor>> {
    let tree = decompose_with(g, cfg)?;
    Ok(tree.leaves().into_iter().map(recognize).collect())
}
