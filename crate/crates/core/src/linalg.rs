//! Sparse exact linear algebra over ℚ.
//!
//! Vectors are maps from an ordered key to a nonzero rational. An [`Echelon`]
//! accumulates vectors in row-echelon form and remembers, for each stored row,
//! which inserted vectors it is a combination of; this is enough to decide
//! membership in a span and to produce an explicit preimage.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Scalar::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    pivot: K,
    vector: SparseVec<K>,
    combo: SparseVec<usize>,
}

#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows. Returns the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut residual = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => residual
                    .keys()
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
                Some(c) => residual
                    .range((
                        std::ops::Bound::Excluded(c.clone()),
                        std::ops::Bound::Unbounded,
                    ))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(key) = next else { break };
            let row = &self.rows[self.pivots[&key]];
            let coef = residual[&key].clone();
            axpy(&mut residual, &-coef.clone(), &row.vector);
            axpy(&mut combo, &coef, &row.combo);
            cursor = Some(key);
        }
        (residual, combo)
    }

    /// Insert the vector with identifier `id`; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec<K>, id: usize) -> bool {
        let (residual, combo) = self.reduce(v);
        if residual.is_empty() {
            return false;
        }
        // residual = v − Σ combo·(inserted vectors)
        let mut full_combo: SparseVec<usize> = BTreeMap::new();
        full_combo.insert(id, Scalar::one());
        axpy(&mut full_combo, &-Scalar::one(), &combo);
        let (pivot, lead) = residual
            .iter()
            .next()
            .map(|(k, v)| (k.clone(), v.clone()))
            .unwrap();
        let inv = Scalar::one() / lead;
        let vector = residual.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        let combo = full_combo.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        self.pivots.insert(pivot.clone(), self.rows.len());
        self.rows.push(Row {
            pivot,
            vector,
            combo,
        });
        true
    }

    /// If `v` is in the span, the coefficients expressing it in terms of the
    /// inserted vectors.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (residual, combo) = self.reduce(v);
        residual.is_empty().then_some(combo)
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.rows.iter().map(|r| &r.pivot)
    }
}
