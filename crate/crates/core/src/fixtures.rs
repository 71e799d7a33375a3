//! Named graphs: the worked examples and the standard families.

use crate::graph::{Graph, Multiplicity};

fn build(names: &[&str], bundles: &[(usize, usize, Multiplicity)]) -> Graph {
    Graph::from_indexed(names.iter().map(|s| s.to_string()).collect(), bundles.iter().copied())
        .expect("fixture graphs are valid")
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `w →(ω) x`
pub fn e_infinity() -> Graph {
    build(&["w", "x"], &[(0, 1, Multiplicity::Infinite)])
}

/// `w → x`, `w → y`
pub fn e1() -> Graph {
    build(&["w", "x", "y"], &[(0, 1, Multiplicity::Finite(1)), (0, 2, Multiplicity::Finite(1))])
}

/// `w →(ω) x`, `w →(ω) y`
pub fn e2() -> Graph {
    build(&["w", "x", "y"], &[(0, 1, Multiplicity::Infinite), (0, 2, Multiplicity::Infinite)])
}

/// `w →(ω) x`, `w →(n) y`
pub fn e3(n: u64) -> Graph {
    build(&["w", "x", "y"], &[(0, 1, Multiplicity::Infinite), (0, 2, Multiplicity::Finite(n))])
}

/// `w →(m) y`
pub fn parallel(m: u64) -> Graph {
    build(&["w", "y"], &[(0, 1, Multiplicity::Finite(m))])
}

/// `v0 → v1 → … → v(n-1)`
pub fn line_graph(n: usize) -> Graph {
    Graph::from_indexed(numbered("v", n), (1..n).map(|i| (i - 1, i, Multiplicity::Finite(1)))).unwrap()
}

/// One vertex with `m` loops.
pub fn rose(m: u64) -> Graph {
    build(&["v"], &[(0, 0, Multiplicity::Finite(m))])
}

/// Directed cycle on `n ≥ 1` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_indexed(numbered("c", n), (0..n).map(|i| (i, (i + 1) % n, Multiplicity::Finite(1)))).unwrap()
}

/// Line of `n` vertices whose last vertex carries `m` loops.
pub fn line_into_rose(n: usize, m: u64) -> Graph {
    let bundles = (1..n).map(|i| (i - 1, i, Multiplicity::Finite(1))).chain(std::iter::once((
        n - 1,
        n - 1,
        Multiplicity::Finite(m),
    )));
    Graph::from_indexed(numbered("v", n), bundles).unwrap()
}

/// `a ← b → c`: connected, not directly connected, decomposable.
pub fn bifurcation() -> Graph {
    build(&["a", "b", "c"], &[(1, 0, Multiplicity::Finite(1)), (1, 2, Multiplicity::Finite(1))])
}

/// Exhaustive isomorphism test over all bijections; only for tiny graphs.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.bundle_count() != h.bundle_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if g.bundles().all(|(s, t, m)| h.multiplicity(perm[s], perm[t]) == Some(m)) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
