use serde_json::{json, Value};

use super::linalg::{SparseVec, Subspace};
use super::{Element, Oracle};
use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::graph::{Graph, VertexSet};
use crate::hsat::require_hsat;

impl Oracle<'_> {
    /// Two-sided ideal generated by the vertices of `generators`.
    pub fn ideal_span(&self, generators: VertexSet, par: Parallelism) -> Result<Subspace> {
        self.graph.check_set(generators)?;
        let gens: Vec<Element> = generators.iter().map(|v| self.vertex(v)).collect();
        self.ideal_span_of(&gens, par)
    }

    /// Two-sided ideal generated by arbitrary elements.
    ///
    /// Worklist closure: every vector that enlarges the span is multiplied by
    /// every basis monomial on both sides. Batches are expanded in parallel
    /// and inserted in a fixed order, so the result is the same echelon form
    /// under either strategy.
    pub fn ideal_span_of(&self, generators: &[Element], par: Parallelism) -> Result<Subspace> {
        let d = self.dimension();
        let mut span = Subspace::zero(d);
        let mut batch = Vec::new();
        for g in generators {
            let v = self.to_coords(g)?;
            if span.insert(v.clone()) {
                batch.push(v);
            }
        }
        while !batch.is_empty() {
            let products: Vec<Vec<SparseVec>> = exec::map(&batch, par, |v| {
                let mut out = Vec::with_capacity(2 * d);
                for i in 0..d {
                    for left in [true, false] {
                        let p = self.monomial_times(i, v, left);
                        if !p.is_empty() {
                            out.push(p);
                        }
                    }
                }
                out
            });
            let mut next = Vec::new();
            for p in products.into_iter().flatten() {
                if span.dim() == d {
                    break;
                }
                if span.insert(p.clone()) {
                    next.push(p);
                }
            }
            batch = next;
        }
        Ok(span)
    }
}

pub fn ideal_span(g: &Graph, generators: VertexSet) -> Result<Subspace> {
    Oracle::new(g)?.ideal_span(generators, Parallelism::default())
}

/// Ideal generated by the given elements of the algebra of `g`.
pub fn ideal_span_of(g: &Graph, generators: &[Element]) -> Result<Subspace> {
    Oracle::new(g)?.ideal_span_of(generators, Parallelism::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectSumReport {
    pub dim_total: usize,
    pub dim_ix: usize,
    pub dim_iy: usize,
    pub dim_intersection: usize,
    pub is_direct: bool,
    pub spans_all: bool,
}

impl DirectSumReport {
    pub fn from_spans(dim_total: usize, ix: &Subspace, iy: &Subspace) -> Self {
        let dim_intersection = ix.intersection_dim(iy);
        let is_direct = dim_intersection == 0;
        DirectSumReport {
            dim_total,
            dim_ix: ix.dim(),
            dim_iy: iy.dim(),
            dim_intersection,
            is_direct,
            spans_all: is_direct && ix.dim() + iy.dim() == dim_total,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim_total": self.dim_total,
            "dim_IX": self.dim_ix,
            "dim_IY": self.dim_iy,
            "dim_intersection": self.dim_intersection,
            "is_direct": self.is_direct,
            "spans_all": self.spans_all,
        })
    }
}

/// Compares `I_X ⊕ I_Y` with the whole algebra.
pub fn verify_direct_sum(g: &Graph, x: VertexSet, y: VertexSet) -> Result<DirectSumReport> {
    let oracle = Oracle::new(g)?;
    require_hsat(g, x)?;
    require_hsat(g, y)?;
    if !x.is_disjoint(y) {
        return Err(Error::InvalidPair("X and Y intersect".into()));
    }
    let par = Parallelism::default();
    let (ix, iy) = exec::join(par, || oracle.ideal_span(x, par), || oracle.ideal_span(y, par));
    Ok(DirectSumReport::from_spans(oracle.dimension(), &ix?, &iy?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hsat::enumerate_hsat;
    use proptest::prelude::*;

    #[test]
    fn e1_splits() {
        let g = fixtures::e1();
        let x = g.vertex_set(["x"]).unwrap();
        let y = g.vertex_set(["y"]).unwrap();
        assert_eq!(ideal_span(&g, x).unwrap().dim(), 4);
        let r = verify_direct_sum(&g, x, y).unwrap();
        assert_eq!((r.dim_total, r.dim_ix, r.dim_iy, r.dim_intersection), (8, 4, 4, 0));
        assert!(r.is_direct && r.spans_all);
        assert_eq!(
            r.to_json().to_string(),
            r#"{"dim_IX":4,"dim_IY":4,"dim_intersection":0,"dim_total":8,"is_direct":true,"spans_all":true}"#
        );
    }

    #[test]
    fn trivial_generators() {
        let g = fixtures::line_graph(3);
        assert_eq!(ideal_span(&g, VertexSet::EMPTY).unwrap().dim(), 0);
        assert_eq!(ideal_span(&g, g.all_vertices()).unwrap().dim(), 9);
        let r = verify_direct_sum(&g, VertexSet::EMPTY, VertexSet::EMPTY).unwrap();
        assert_eq!(
            r,
            DirectSumReport {
                dim_total: 9,
                dim_ix: 0,
                dim_iy: 0,
                dim_intersection: 0,
                is_direct: true,
                spans_all: false
            }
        );
    }

    #[test]
    fn sink_of_a_line_generates_everything() {
        let g = fixtures::line_graph(3);
        let sink = g.vertex_set(["v2"]).unwrap();
        assert_eq!(ideal_span(&g, sink).unwrap().dim(), 9);
        // {v2} is not saturated, so the report is taken on its closure
        assert!(verify_direct_sum(&g, sink, VertexSet::EMPTY).is_err());
        let r = verify_direct_sum(&g, g.all_vertices(), VertexSet::EMPTY).unwrap();
        assert_eq!((r.dim_ix, r.dim_iy), (9, 0));
        assert!(r.spans_all);
    }

    #[test]
    fn precondition_errors() {
        let g = fixtures::line_graph(2);
        let src = g.vertex_set(["v0"]).unwrap();
        assert!(matches!(verify_direct_sum(&g, src, VertexSet::EMPTY), Err(Error::NotHereditarySaturated(_))));
        assert!(matches!(
            verify_direct_sum(&fixtures::rose(2), VertexSet::EMPTY, VertexSet::EMPTY),
            Err(Error::OracleScope(_))
        ));
        let all = g.all_vertices();
        assert!(matches!(verify_direct_sum(&g, all, all), Err(Error::InvalidPair(_))));
    }

    proptest! {
        #[test]
        fn span_is_monotone_and_stable(g in fixtures::strategy::acyclic_graph(4), a in any::<u64>(), b in any::<u64>()) {
            let o = Oracle::new(&g).unwrap();
            let all = g.all_vertices().bits();
            let small = VertexSet::from_bits(a & b & all);
            let large = VertexSet::from_bits((a | (a & b)) & all);
            let s = o.ideal_span(small, Parallelism::Sequential).unwrap();
            let l = o.ideal_span(large, Parallelism::Sequential).unwrap();
            prop_assert!(s.is_subspace_of(&l));
            let rows: Vec<Element> = l.rows().map(|r| o.from_coords(r)).collect();
            prop_assert_eq!(o.ideal_span_of(&rows, Parallelism::Sequential).unwrap(), l.clone());
            prop_assert_eq!(o.ideal_span(large, Parallelism::Parallel).unwrap(), l);
        }

        #[test]
        fn vertices_are_local_units(g in fixtures::strategy::acyclic_graph(4)) {
            prop_assert_eq!(ideal_span(&g, g.all_vertices()).unwrap().dim(), super::super::dimension(&g).unwrap());
        }

        #[test]
        fn ideals_of_hsat_sets_are_distinct(g in fixtures::strategy::acyclic_graph(4)) {
            let o = Oracle::new(&g).unwrap();
            let sets = enumerate_hsat(&g).unwrap();
            let spans: Vec<Subspace> = sets.iter().map(|&h| o.ideal_span(h, Parallelism::Sequential).unwrap()).collect();
            for i in 0..spans.len() {
                for j in 0..spans.len() {
                    prop_assert_eq!(spans[i].is_subspace_of(&spans[j]), sets[i].is_subset(sets[j]));
                }
            }
        }
    }
}
