//! Finite formal linear combinations over an ordered key set.
//!
//! Used for sparse vectors in `P`, tensors in `P⊗P`, `P⊗H`, and the
//! three-fold tensors that appear in the connection axioms. Zero
//! coefficients are never stored, so structural equality is equality of
//! vectors.

use std::collections::btree_map::{self, BTreeMap};

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct LinComb<K: Ord, F> {
    terms: BTreeMap<K, F>,
}

impl<K: Ord + Clone, F: Field> Default for LinComb<K, F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, F: Field> LinComb<K, F> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(key: K, coeff: F) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, F::one())
    }

    pub fn add_term(&mut self, key: K, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn get(&self, key: &K) -> F {
        self.terms.get(key).cloned().unwrap_or_else(F::zero)
    }

    pub fn remove(&mut self, key: &K) -> Option<F> {
        self.terms.remove(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &F)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Smallest key with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&K, &F)> {
        self.terms.iter().next()
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2, F>) -> LinComb<K2, F> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; colliding keys are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, F> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// First key where `self` and `other` differ, for witness reporting.
    pub fn first_difference(&self, other: &Self) -> Option<(K, F, F)> {
        let diff = self.sub(other);
        diff.leading()
            .map(|(k, _)| (k.clone(), self.get(k), other.get(k)))
    }
}

impl<K: Ord + Clone, F: Field> FromIterator<(K, F)> for LinComb<K, F> {
    fn from_iter<I: IntoIterator<Item = (K, F)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<K: Ord + Clone, F: Field> IntoIterator for LinComb<K, F> {
    type Item = (K, F);
    type IntoIter = btree_map::IntoIter<K, F>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

/// Tensor product of two combinations, keys paired.
pub fn tensor<K1, K2, F>(a: &LinComb<K1, F>, b: &LinComb<K2, F>) -> LinComb<(K1, K2), F>
where
    K1: Ord + Clone,
    K2: Ord + Clone,
    F: Field,
{
    let mut out = LinComb::zero();
    for (k1, c1) in a.iter() {
        for (k2, c2) in b.iter() {
            out.add_term((k1.clone(), k2.clone()), c1.clone() * c2.clone());
        }
    }
    out
}

/// Sparse vector indexed by basis position.
pub type SparseVec<F> = LinComb<usize, F>;
