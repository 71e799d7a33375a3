use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse vector over a fixed coordinate basis; zero entries are absent.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// Linear subspace kept in reduced row echelon form: every row has a
/// leading 1 at its pivot and zeros at every other row's pivot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(target: &mut SparseVec, scale: &BigRational, row: &SparseVec) {
    for (&col, c) in row {
        let entry = target.entry(col).or_insert_with(BigRational::zero);
        *entry -= scale * c;
        if entry.is_zero() {
            target.remove(&col);
        }
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: BTreeMap::new() }
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows of the reduced echelon basis, in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, BigRational)> =
            v.iter().filter(|(col, _)| self.rows.contains_key(col)).map(|(&c, x)| (c, x.clone())).collect();
        for (col, coef) in hits {
            axpy(&mut v, &coef, &self.rows[&col]);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.keys().all(|&c| c < self.ambient));
        let mut v = self.reduce(v);
        let Some((&lead, lead_coef)) = v.iter().next() else {
            return false;
        };
        if !lead_coef.is_one() {
            let inv = lead_coef.recip();
            for x in v.values_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&lead).cloned() {
                axpy(row, &c, &v);
            }
        }
        self.rows.insert(lead, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for row in other.rows() {
            out.insert(row.clone());
        }
        out
    }

    /// `dim(U ∩ W) = dim U + dim W − dim(U + W)`.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows().all(|r| other.contains(r))
    }
}
