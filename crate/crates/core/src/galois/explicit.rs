//! Hand-written isomorphisms `P ⊗_A P ≅ P ⊗ C[G]` for the three elementary
//! embeddings. They are independent of the coaction machinery and serve as
//! dimension oracles for the relative tensor product.

use crate::error::{Error, Result};
use crate::hopf::{FiniteAbelianGroup, GroupElem};
use crate::lincomb::SparseVec;
use crate::multimatrix::{BlockPartition, MultiMatrixAlgebra};
use crate::scalar::Field;

use super::{PHTensor, RelativeTensor};

/// `T(E_ij ⊗ E_ab) = δ_{ja} E_ib ⊗ (j)` on `M_m`, with `(j)` the block of `j`.
pub fn case1_t<F: Field>(partition: &BlockPartition, p: usize, q: usize) -> PHTensor<F> {
    let alg = MultiMatrixAlgebra::full(partition.m()).expect("m > 0");
    let (e, f) = (alg.unit(p), alg.unit(q));
    if e.col != f.row {
        return PHTensor::zero();
    }
    let ib = alg.index(0, e.row, f.col).expect("in range");
    PHTensor::basis((ib, partition.block_of(e.col)))
}

/// `R(E_ij ⊗ E_ab) = E_ib ⊗ (r, ⌊a/k⌋)` when `j ≡ a + kr (mod kn)`, else 0.
///
/// The group is `Z_n × Z_n` with mixed-radix indexing `r·n + s`.
pub fn case2_r<F: Field>(k: usize, n: usize, p: usize, q: usize) -> PHTensor<F> {
    let m = k * n;
    let alg = MultiMatrixAlgebra::full(m).expect("m > 0");
    let (e, f) = (alg.unit(p), alg.unit(q));
    let diff = (e.col + m - f.row) % m;
    if !diff.is_multiple_of(k) {
        return PHTensor::zero();
    }
    let r = diff / k;
    let ib = alg.index(0, e.row, f.col).expect("in range");
    PHTensor::basis((ib, r * n + f.row / k))
}

/// `u(c_{,r} ⊗ b_{,t}) = (cb)_{,r} ⊗ t` on `B^{⊕n}`.
pub fn case3_u<F: Field>(b: &MultiMatrixAlgebra, n: usize, p: usize, q: usize) -> PHTensor<F> {
    let db = b.dim();
    let (r, c) = (p / db, p % db);
    let (t, d) = (q / db, q % db);
    debug_assert!(r < n && t < n);
    match b.mul_units(c, d) {
        Some(cd) => PHTensor::basis((r * db + cd, t)),
        None => PHTensor::zero(),
    }
}

/// Checks that `map` (given on basis tensors) vanishes on the relations of
/// `rt` and returns its rank on the quotient.
pub fn quotient_rank<F: Field>(
    rt: &RelativeTensor<F>,
    group: &FiniteAbelianGroup,
    map: impl Fn(usize, usize) -> PHTensor<F>,
) -> Result<usize> {
    let apply = |t: &super::PTensor<F>| -> PHTensor<F> {
        let mut out = PHTensor::zero();
        for ((p, q), c) in t.iter() {
            out.add_scaled(&map(*p, *q), c);
        }
        out
    };
    for row in rt.relation_rows() {
        if !apply(&row).is_zero() {
            return Err(Error::Structural("oracle map does not vanish on a relation".into()));
        }
    }
    let order = group.order();
    let cols: Vec<SparseVec<F>> = rt
        .basis()
        .iter()
        .map(|&(p, q)| map(p, q).map_keys(|&(u, g): &(usize, GroupElem)| u * order + g))
        .collect();
    Ok(crate::linalg::rank(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::relative_tensor;
    use crate::multimatrix::{embed_case1, embed_case2, embed_case3};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn case1_oracle_is_bijective() {
        for lengths in [vec![1, 1], vec![2, 1], vec![1, 2, 1]] {
            let part = BlockPartition::new(lengths.clone()).unwrap();
            let emb = embed_case1::<Q>(&part);
            let rt = relative_tensor(&emb.target, emb.image_basis()).unwrap();
            let g = FiniteAbelianGroup::cyclic(part.n() as u32).unwrap();
            let target = emb.target.dim() * g.order();
            assert_eq!(rt.dim(), target, "{lengths:?}");
            assert_eq!(quotient_rank(&rt, &g, |p, q| case1_t(&part, p, q)).unwrap(), target);
        }
    }

    #[test]
    fn case2_oracle_is_bijective() {
        for (k, n) in [(1, 2), (2, 2), (1, 3)] {
            let emb = embed_case2::<Q>(k, n).unwrap();
            let rt = relative_tensor(&emb.target, emb.image_basis()).unwrap();
            let g = FiniteAbelianGroup::new(vec![n as u32, n as u32]).unwrap();
            let target = emb.target.dim() * g.order();
            assert_eq!(rt.dim(), target, "k={k} n={n}");
            assert_eq!(quotient_rank(&rt, &g, |p, q| case2_r(k, n, p, q)).unwrap(), target);
        }
    }

    #[test]
    fn case3_oracle_is_bijective() {
        for (dims, n) in [(vec![1], 2), (vec![1, 2], 2), (vec![2], 3)] {
            let b = MultiMatrixAlgebra::new(dims).unwrap();
            let emb = embed_case3::<Q>(&b, n).unwrap();
            let rt = relative_tensor(&emb.target, emb.image_basis()).unwrap();
            let g = FiniteAbelianGroup::cyclic(n as u32).unwrap();
            let target = emb.target.dim() * g.order();
            assert_eq!(rt.dim(), target);
            assert_eq!(quotient_rank(&rt, &g, |p, q| case3_u(&b, n, p, q)).unwrap(), target);
        }
    }
}
