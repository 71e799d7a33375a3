//! Acceptance checks, one line per criterion. Exits nonzero on any failure.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{FINITE, WITH_OMEGA};
use lpa_core::decision::{decide_row_finite, row_finite_conditions};
use lpa_core::hsat::all_admissible_pairs;
use lpa_core::oracle::{DirectSumReport, Oracle, Subspace};
use lpa_core::{
    breaking_vertices, canonical_form, components, count_compatible_paths, decide, decompose, dimension,
    enumerate_hsat, fixtures, join, meet, verify_direct_sum, AdmissiblePair, EdgeBundle, Graph, Multiplicity,
    Parallelism, PathCount, Verdict, VertexSet,
};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(g: &Graph, names: &[&str]) -> VertexSet {
    g.vertex_set(names.iter().copied()).unwrap()
}

fn witness_is(g: &Graph, v: &Verdict, x: &[&str], y: &[&str]) -> bool {
    v.witness() == Some((set(g, x), set(g, y)))
}

fn worked_examples() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut timed = |g: &Graph| {
        let start = Instant::now();
        let v = decide(g).unwrap();
        slowest = slowest.max(start.elapsed());
        v
    };
    ensure(timed(&fixtures::e_infinity()) == Verdict::Indecomposable, || "E_inf decomposed".into())?;
    ensure(timed(&fixtures::e2()) == Verdict::Indecomposable, || "E_2 decomposed".into())?;
    let e1 = fixtures::e1();
    ensure(witness_is(&e1, &timed(&e1), &["x"], &["y"]), || "E_1 witness".into())?;
    for n in 1..=3 {
        let e3 = fixtures::e3(n);
        ensure(witness_is(&e3, &timed(&e3), &["x"], &["y"]), || format!("E_3({n}) witness"))?;
    }
    ensure(slowest < Duration::from_millis(10), || format!("slowest call took {slowest:?}"))?;
    Ok(format!("6 fixtures, slowest {slowest:?}"))
}

fn e3_components() -> Outcome {
    for n in 1..=3 {
        let tree = decompose(&fixtures::e3(n)).unwrap();
        let leaves = tree.leaves();
        ensure(leaves.len() == 2, || format!("n={n}: {} leaves", leaves.len()))?;
        let finite = Graph::new(["w", "y"], [EdgeBundle::new("w", "y", Multiplicity::Finite(n))]).unwrap();
        let omega = Graph::new(["w", "x"], [EdgeBundle::new("w", "x", Multiplicity::Infinite)]).unwrap();
        ensure(canonical_form(leaves[0]).unwrap() == canonical_form(&finite).unwrap(), || {
            format!("n={n}: first leaf")
        })?;
        ensure(canonical_form(leaves[1]).unwrap() == canonical_form(&omega).unwrap(), || {
            format!("n={n}: second leaf")
        })?;
    }
    Ok("n = 1, 2, 3".into())
}

fn algebraic_verification() -> Outcome {
    let e1 = fixtures::e1();
    let r = verify_direct_sum(&e1, set(&e1, &["x"]), set(&e1, &["y"])).unwrap();
    let dims = (r.dim_total, r.dim_ix, r.dim_iy, r.dim_intersection);
    ensure(dims == (8, 4, 4, 0) && r.spans_all, || format!("E_1 report {r:?}"))?;
    for n in 1..=6 {
        let d = dimension(&fixtures::line_graph(n)).unwrap();
        ensure(d == n * n, || format!("line graph {n}: dimension {d}"))?;
    }
    Ok("E_1 dims (8, 4, 4, 0); line graphs n <= 6".into())
}

fn criterion_equivalence() -> Outcome {
    let mut classes = 0;
    let mut decomposable = 0;
    let mut disagreements = Vec::new();
    for n in 1..=4 {
        classes += common::for_each_class(n, &FINITE, |g| {
            let a = decide(g).unwrap().is_decomposable();
            let b = decide_row_finite(g).unwrap().is_decomposable();
            decomposable += usize::from(a);
            if a != b && disagreements.len() < 3 {
                disagreements.push(g.to_text());
            }
        });
    }
    ensure(disagreements.is_empty(), || format!("disagree on {disagreements:?}"))?;
    let mut rng = common::rng(4);
    let mut random = 0;
    for i in 0..240 {
        let g = common::random_graph(&mut rng, 5 + i % 2, &FINITE, 0.25);
        let a = decide(&g).unwrap().is_decomposable();
        let b = decide_row_finite(&g).unwrap().is_decomposable();
        ensure(a == b, || format!("disagree on random graph\n{}", g.to_text()))?;
        random += 1;
    }
    Ok(format!(
        "{classes} isomorphism classes on <= 4 vertices ({decomposable} decomposable), {random} random graphs on 5-6 vertices"
    ))
}

fn unsoundness_guard() -> Outcome {
    let e2 = fixtures::e2();
    let naive = row_finite_conditions(&e2, set(&e2, &["x"]), set(&e2, &["y"])).unwrap();
    ensure(naive, || "naive conditions reject E_2".into())?;
    ensure(decide(&e2).unwrap() == Verdict::Indecomposable, || "E_2 decomposed".into())?;
    Ok("naive conditions accept E_2, decide rejects it".into())
}

/// Whether some disjoint nontrivial hereditary saturated pair splits the
/// algebra, by ideal spans.
fn oracle_splits(g: &Graph) -> bool {
    let oracle = Oracle::new(g).unwrap();
    let sets = enumerate_hsat(g).unwrap();
    let mut spans: HashMap<VertexSet, Subspace> = HashMap::new();
    for (x, y) in common::nontrivial_disjoint_pairs(g, &sets) {
        for s in [x, y] {
            spans.entry(s).or_insert_with(|| oracle.ideal_span(s, Parallelism::Sequential).unwrap());
        }
        if DirectSumReport::from_spans(oracle.dimension(), &spans[&x], &spans[&y]).spans_all {
            return true;
        }
    }
    false
}

fn oracle_cross_check() -> Outcome {
    let mut by_class = HashMap::new();
    let mut graphs = 0;
    let mut decomposable = 0;
    let mut disagreements = Vec::new();
    for n in 1..=4 {
        graphs += common::for_each_forward_graph(n, &FINITE, |g| {
            let code = canonical_form(g).unwrap();
            let split = *by_class.entry(code).or_insert_with(|| oracle_splits(g));
            decomposable += usize::from(split);
            if decide(g).unwrap().is_decomposable() != split && disagreements.len() < 3 {
                disagreements.push(g.to_text());
            }
        });
    }
    ensure(disagreements.is_empty(), || format!("disagree on {disagreements:?}"))?;
    Ok(format!("{graphs} labeled acyclic graphs ({decomposable} split), {} classes through the oracle", by_class.len()))
}

fn lattice_laws() -> Outcome {
    let mut rng = common::rng(7);
    let mut checked = 0;
    let mut largest = 0;
    for i in 0..120 {
        let g = common::random_graph(&mut rng, 1 + i % 5, &WITH_OMEGA, 0.3);
        let pairs = all_admissible_pairs(&g).unwrap();
        largest = largest.max(pairs.len());
        let m = |p: &AdmissiblePair, q: &AdmissiblePair| meet(&g, p, q).unwrap();
        let j = |p: &AdmissiblePair, q: &AdmissiblePair| join(&g, p, q).unwrap();
        let fail = |law: &str| format!("{law} fails on\n{}", g.to_text());
        let (bottom, top) = (AdmissiblePair::bottom(), AdmissiblePair::top(&g));
        for p in &pairs {
            ensure(m(p, p) == *p && j(p, p) == *p, || fail("idempotence"))?;
            for q in &pairs {
                ensure(m(p, q) == m(q, p) && j(p, q) == j(q, p), || fail("commutativity"))?;
                ensure(m(p, &j(p, q)) == *p && j(p, &m(p, q)) == *p, || fail("absorption"))?;
                if m(p, q) == bottom && j(p, q) == top {
                    let full = |r: &AdmissiblePair| r.s() == breaking_vertices(&g, r.h()).unwrap();
                    ensure(full(p) && full(q), || fail("complement"))?;
                }
                for r in &pairs {
                    ensure(m(&m(p, q), r) == m(p, &m(q, r)), || fail("meet associativity"))?;
                    ensure(j(&j(p, q), r) == j(p, &j(q, r)), || fail("join associativity"))?;
                }
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} random graphs, lattices of up to {largest} pairs"))
}

fn breaking_vertex_lemma() -> Outcome {
    let mut rng = common::rng(7);
    let mut pairs = 0;
    for i in 0..120 {
        let g = common::random_graph(&mut rng, 1 + i % 5, &WITH_OMEGA, 0.3);
        let b = |s| breaking_vertices(&g, s).unwrap();
        ensure(b(VertexSet::EMPTY).is_empty() && b(g.all_vertices()).is_empty(), || {
            format!("trivial sets break on\n{}", g.to_text())
        })?;
        let sets = enumerate_hsat(&g).unwrap();
        for (k, &x) in sets.iter().enumerate() {
            for &y in &sets[k + 1..] {
                if x.is_disjoint(y) {
                    ensure(b(x).is_disjoint(b(y)), || format!("B_X meets B_Y on\n{}", g.to_text()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("120 random graphs, {pairs} disjoint pairs"))
}

fn structural_properties() -> Outcome {
    let mut rng = common::rng(9);
    for i in 0..60 {
        let g = common::random_strongly_connected(&mut rng, 1 + i % 6, &WITH_OMEGA);
        ensure(decide(&g).unwrap() == Verdict::Indecomposable, || format!("decomposed\n{}", g.to_text()))?;
    }
    for i in 0..60 {
        let a = common::random_graph(&mut rng, 1 + i % 4, &WITH_OMEGA, 0.3).with_prefix("a").unwrap();
        let b = common::random_graph(&mut rng, 1 + (i / 4) % 4, &WITH_OMEGA, 0.3).with_prefix("b").unwrap();
        let u = a.disjoint_union(&b).unwrap();
        ensure(decide(&u).unwrap().is_decomposable(), || format!("union indecomposable\n{}", u.to_text()))?;
        let mut expected = components(&a).unwrap();
        expected.extend(components(&b).unwrap());
        expected.sort();
        ensure(components(&u).unwrap() == expected, || format!("components differ\n{}", u.to_text()))?;
    }
    Ok("60 directly connected graphs, 60 disjoint unions".into())
}

/// `finitely many but at least one` edge from `v` lands outside `h`.
fn brute_breaking(g: &Graph, h: VertexSet) -> VertexSet {
    (0..g.vertex_count())
        .filter(|&v| !h.contains(v))
        .filter(|&v| g.out_bundles(v).any(|(_, m)| m.is_infinite()))
        .filter(|&v| {
            let outside: Vec<Multiplicity> =
                g.out_bundles(v).filter(|(t, _)| !h.contains(*t)).map(|(_, m)| m).collect();
            !outside.is_empty() && outside.iter().all(|m| !m.is_infinite())
        })
        .collect()
}

/// Counts compatible paths from `v` by walking them. A path that stays
/// outside `X ∪ Y` for more than `k` steps repeats a vertex and can be
/// pumped, and the shortest such terminating path is at most `2k + 1`
/// long, so walks are cut at that length.
fn brute_count(g: &Graph, x: VertexSet, y: VertexSet, v: usize) -> PathCount {
    let (bx, by) = (brute_breaking(g, x), brute_breaking(g, y));
    let union = x.union(y);
    let k = g.vertex_count() - union.len();
    let compatible = |s: usize, t: usize| !(bx.contains(s) && x.contains(t)) && !(by.contains(s) && y.contains(t));
    fn walk(
        g: &Graph,
        at: usize,
        len: usize,
        weight: u64,
        ctx: &(VertexSet, usize, &dyn Fn(usize, usize) -> bool),
        total: &mut u64,
    ) -> bool {
        let (union, k, compatible) = *ctx;
        for (t, m) in g.out_bundles(at) {
            if !compatible(at, t) {
                continue;
            }
            let reaches_top = union.contains(t);
            if reaches_top {
                if m.is_infinite() || len + 1 > k {
                    return true;
                }
                *total += weight * m.as_finite().unwrap();
            } else if len + 1 < 2 * k + 1 {
                let w = match m {
                    Multiplicity::Finite(c) => weight * c,
                    Multiplicity::Infinite => weight,
                };
                let mut sub = 0;
                if walk(g, t, len + 1, w, ctx, &mut sub) {
                    return true;
                }
                // an ω bundle on a terminating path makes the count infinite
                if sub > 0 && m.is_infinite() {
                    return true;
                }
                *total += sub;
            }
        }
        false
    }
    let mut total = 0;
    if walk(g, v, 0, 1, &(union, k, &compatible), &mut total) {
        PathCount::Infinite
    } else {
        PathCount::Finite(total)
    }
}

fn path_count_oracle() -> Outcome {
    let mut comparisons = 0u64;
    let mut bad = Vec::new();
    let mut check = |g: &Graph| {
        let sets = enumerate_hsat(g).unwrap();
        for (i, &x) in sets.iter().enumerate() {
            for &y in &sets[i..] {
                if !x.is_disjoint(y) || x.union(y).is_empty() {
                    continue;
                }
                for v in g.all_vertices().difference(x.union(y)).iter() {
                    comparisons += 1;
                    if count_compatible_paths(g, x, y, v).unwrap() != brute_count(g, x, y, v) && bad.len() < 3 {
                        bad.push(format!("{}at {}", g.to_text(), g.name(v)));
                    }
                }
            }
        }
    };
    let mut classes = 0;
    for n in 1..=4 {
        classes += common::for_each_class(n, &FINITE, &mut check);
    }
    for n in 1..=3 {
        classes += common::for_each_class(n, &WITH_OMEGA, &mut check);
    }
    ensure(bad.is_empty(), || format!("mismatch on {bad:?}"))?;
    for n in 1..=4 {
        let e3 = fixtures::e3(n);
        let c = count_compatible_paths(&e3, set(&e3, &["x"]), set(&e3, &["y"]), 0).unwrap();
        ensure(c == PathCount::Finite(n), || format!("E_3({n}) count {c}"))?;
    }
    let e2 = fixtures::e2();
    let c = count_compatible_paths(&e2, set(&e2, &["x"]), set(&e2, &["y"]), 0).unwrap();
    ensure(c == PathCount::Infinite, || format!("E_2 count {c}"))?;
    Ok(format!("{comparisons} counts over {classes} classes (finite on <= 4 vertices, with ω on <= 3)"))
}

fn matrix_size() -> Outcome {
    let mut dims = Vec::new();
    for m in 1..=4u64 {
        let d = dimension(&fixtures::parallel(m)).unwrap() as u64;
        ensure(d == (m + 1) * (m + 1), || format!("m={m}: dimension {d}"))?;
        dims.push(d);
    }
    Ok(format!("dimensions {dims:?}: the m-edge graph gives M_(m+1)(K), not M_m(K)"))
}

fn main() {
    let criteria: [Check; 11] = [
        ("worked examples decide correctly", worked_examples),
        ("E_3 decomposes into w->(n)y and w->(inf)x", e3_components),
        ("ideal spans split E_1; line graph dimensions", algebraic_verification),
        ("general and row-finite criteria agree", criterion_equivalence),
        ("naive row-finite conditions are unsound for E_2", unsoundness_guard),
        ("decide agrees with the ideal-span oracle", oracle_cross_check),
        ("admissible pairs form a lattice", lattice_laws),
        ("breaking sets of disjoint pairs are disjoint", breaking_vertex_lemma),
        ("directly connected graphs and disjoint unions", structural_properties),
        ("path counts agree with enumeration", path_count_oracle),
        ("parallel-edge graph has dimension (m+1)^2", matrix_size),
    ];
    let quiet = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    std::panic::set_hook(quiet);
    if failed > 0 {
        std::process::exit(1);
    }
}
