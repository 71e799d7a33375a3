//! Graph generators shared by the integration tests.
#![allow(dead_code)]

use lpa_core::{Graph, Multiplicity, VertexSet};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FINITE: [Multiplicity; 2] = [Multiplicity::Finite(1), Multiplicity::Finite(2)];
pub const WITH_OMEGA: [Multiplicity; 3] = [Multiplicity::Finite(1), Multiplicity::Finite(2), Multiplicity::Infinite];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Each ordered pair (loops included) gets a bundle with probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, mults: &[Multiplicity], p: f64) -> Graph {
    let mut bundles = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(p) {
                bundles.push((s, t, mults[rng.gen_range(0..mults.len())]));
            }
        }
    }
    Graph::from_indexed(names(n), bundles).unwrap()
}

/// A random Hamiltonian cycle plus random extra bundles: always directly
/// connected.
pub fn random_strongly_connected(rng: &mut ChaCha8Rng, n: usize, mults: &[Multiplicity]) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut cells = vec![None; n * n];
    for i in 0..n {
        let (s, t) = (order[i], order[(i + 1) % n]);
        cells[s * n + t] = Some(mults[rng.gen_range(0..mults.len())]);
    }
    for cell in cells.iter_mut() {
        if cell.is_none() && rng.gen_bool(0.25) {
            *cell = Some(mults[rng.gen_range(0..mults.len())]);
        }
    }
    let bundles = cells.iter().enumerate().filter_map(|(i, m)| m.map(|m| (i / n, i % n, m)));
    Graph::from_indexed(names(n), bundles).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Calls `f` once per isomorphism class of graphs on exactly `n` vertices
/// whose ordered pairs (loops included) carry no bundle or one with a
/// multiplicity from `alphabet`.
///
/// A graph is visited iff its adjacency word is lexicographically least
/// among all relabelings, so every class is seen exactly once.
pub fn for_each_class(n: usize, alphabet: &[Multiplicity], mut f: impl FnMut(&Graph)) -> usize {
    let cells = n * n;
    let base = alphabet.len() as u8 + 1;
    // src[k][pos]: cell of the original word read at `pos` after relabeling k
    let sources: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .skip(1)
        .map(|p| {
            let mut src = vec![0; cells];
            for s in 0..n {
                for t in 0..n {
                    src[p[s] * n + p[t]] = s * n + t;
                }
            }
            src
        })
        .collect();
    let names = names(n);
    let mut word = vec![0u8; cells];
    let mut visited = 0;
    loop {
        let least = sources.iter().all(|src| {
            for pos in 0..cells {
                let (a, b) = (word[pos], word[src[pos]]);
                if a != b {
                    return a < b;
                }
            }
            true
        });
        if least {
            let bundles =
                word.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, &d)| (i / n, i % n, alphabet[d as usize - 1]));
            f(&Graph::from_indexed(names.clone(), bundles).unwrap());
            visited += 1;
        }
        // odometer, last cell fastest
        let mut pos = cells;
        loop {
            if pos == 0 {
                return visited;
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < base {
                break;
            }
            word[pos] = 0;
        }
    }
}

/// Every labeled acyclic graph on `n` vertices whose bundles go from lower
/// to higher index; every acyclic graph is isomorphic to one of these.
pub fn for_each_forward_graph(n: usize, alphabet: &[Multiplicity], mut f: impl FnMut(&Graph)) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).collect();
    let base = alphabet.len() + 1;
    let total = base.pow(pairs.len() as u32);
    let names = names(n);
    for code in 0..total {
        let mut c = code;
        let mut bundles = Vec::new();
        for &(s, t) in &pairs {
            let d = c % base;
            c /= base;
            if d > 0 {
                bundles.push((s, t, alphabet[d - 1]));
            }
        }
        f(&Graph::from_indexed(names.clone(), bundles).unwrap());
    }
    total
}

/// Disjoint pairs of hereditary saturated sets, both nonempty and proper.
pub fn nontrivial_disjoint_pairs(g: &Graph, sets: &[VertexSet]) -> Vec<(VertexSet, VertexSet)> {
    let all = g.all_vertices();
    let inner: Vec<VertexSet> = sets.iter().copied().filter(|s| !s.is_empty() && *s != all).collect();
    let mut out = Vec::new();
    for (i, &x) in inner.iter().enumerate() {
        for &y in &inner[i + 1..] {
            if x.is_disjoint(y) {
                out.push((x, y));
            }
        }
    }
    out
}
