//! Exact sparse Gaussian elimination.
//!
//! Pivots are always the smallest column index of a row, so bases, quotient
//! representatives and kernel vectors are deterministic functions of the
//! input span.

use std::collections::BTreeMap;

use crate::lincomb::SparseVec;
use crate::scalar::Field;

/// Row-echelon basis of a subspace, each row monic at its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<F>> {
        self.rows.values()
    }

    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        loop {
            let Some((&lead, c)) = v.leading() else {
                return v;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let c = -c.clone();
                    v.add_scaled(row, &c);
                }
                None => return v,
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce_leading(v);
        let Some((&lead, c)) = r.leading() else {
            return false;
        };
        let inv = c.inverse().expect("nonzero pivot");
        self.rows.insert(lead, r.scaled(&inv));
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Eliminates every pivot column from `v`. The result is the canonical
    /// representative of `v` modulo the span, supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v
                .iter()
                .map(|(k, _)| *k)
                .find(|k| *k >= cursor && self.rows.contains_key(k));
            let Some(col) = next else {
                return v;
            };
            let c = -v.get(&col);
            v.add_scaled(&self.rows[&col], &c);
            cursor = col + 1;
        }
    }

    /// Converts to reduced row-echelon form in place.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows[&p].clone();
            let mut tail = row.clone();
            tail.remove(&p);
            let reduced_tail = self.reduce(&tail);
            let mut new_row = reduced_tail;
            new_row.add_term(p, F::one());
            self.rows.insert(p, new_row);
        }
    }
}

/// Basis of `{x : eq·x = 0 for every equation}` in a space of `ncols` coordinates.
///
/// One vector per free column `f`, with coefficient 1 at `f` and zero at the
/// other free columns.
pub fn kernel<F: Field>(equations: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::from_rows(equations);
    e.make_reduced();
    (0..ncols)
        .filter(|c| !e.is_pivot(*c))
        .map(|free| {
            let mut v = SparseVec::basis(free);
            for (p, row) in &e.rows {
                let c = row.get(&free);
                if !c.is_zero() {
                    v.add_term(*p, -c);
                }
            }
            v
        })
        .collect()
}

/// Echelon form that remembers how each row was built from the inputs, so
/// membership queries also return a combination of inputs.
#[derive(Clone, Debug)]
pub struct TrackedEchelon<F: Field> {
    rows: BTreeMap<usize, (SparseVec<F>, SparseVec<F>)>,
}

impl<F: Field> Default for TrackedEchelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> TrackedEchelon<F> {
    pub fn new() -> Self {
        TrackedEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, mut v: SparseVec<F>, mut combo: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        loop {
            let Some((&lead, c)) = v.leading() else {
                return (v, combo);
            };
            let Some((row, rc)) = self.rows.get(&lead) else {
                return (v, combo);
            };
            let c = -c.clone();
            v.add_scaled(row, &c);
            combo.add_scaled(rc, &c);
        }
    }

    /// Adds input number `id`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>, id: usize) -> bool {
        let (r, combo) = self.reduce_tracked(v, SparseVec::basis(id));
        let Some((&lead, c)) = r.leading() else {
            return false;
        };
        let inv = c.inverse().expect("nonzero pivot");
        self.rows.insert(lead, (r.scaled(&inv), combo.scaled(&inv)));
        true
    }

    /// Coefficients `x` with `Σ x_id · input_id = target`, if the target is in the span.
    pub fn solve(&self, target: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (rest, combo) = self.reduce_tracked(target.clone(), SparseVec::zero());
        if rest.is_zero() {
            Some(combo.scaled(&-F::one()))
        } else {
            None
        }
    }
}

/// One solution of `rows · x = rhs` in `ncols` unknowns (free variables set
/// to zero), or `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(rows: &[SparseVec<F>], rhs: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        aug.add_term(ncols, b.clone());
        e.insert(aug);
    }
    if e.is_pivot(ncols) {
        return None;
    }
    e.make_reduced();
    let mut x = vec![F::zero(); ncols];
    for (p, row) in &e.rows {
        x[*p] = row.get(&ncols);
    }
    Some(x)
}

/// Rank of a list of vectors.
pub fn rank<'a, F: Field>(rows: impl IntoIterator<Item = &'a SparseVec<F>>) -> usize {
    Echelon::from_rows(rows).rank()
}
