//! Oracles written directly from the defining formulas, independent of the
//! library's constructions. Each returns `Err(witness)` on the first mismatch.
#![allow(dead_code)]

use hopf_bratteli::bundles::{Bundle, Connection};
use hopf_bratteli::galois::PTensor;
use hopf_bratteli::hopf::FnHopfAlgebra;
use hopf_bratteli::lincomb::{tensor, LinComb, SparseVec};
use hopf_bratteli::multimatrix::MultiMatrixAlgebra;
use hopf_bratteli::scalar::{Field, RootField};
use hopf_bratteli::{linalg, CycNum};

pub type C = CycNum;

pub fn root(n: usize, k: i64) -> C {
    <C as RootField>::root_of_unity(n as u32, k)
}

pub fn q(a: i64, b: i64) -> C {
    C::from_ratio(a, b)
}

/// Coassociativity, counit, antipode and left-invariance of the integral on
/// every basis element of `C[G]`.
pub fn hopf_axioms(h: &FnHopfAlgebra) -> Result<(), String> {
    let g = h.group();
    let one = h.one::<C>();
    for x in g.elements() {
        let d = h.delta::<C>(x);
        let cop = h.coproduct(&d);

        // (id ⊗ Δ)Δ built by hand against the library's (Δ ⊗ id)Δ.
        let right: LinComb<(usize, usize, usize), C> =
            cop.map_linear(|&(a, b)| h.coproduct(&h.delta::<C>(b)).map_keys(|&(b1, b2)| (a, b1, b2)));
        if right != h.coproduct2(&d) {
            return Err(format!("coassociativity fails at δ_{}", g.format_elem(x)));
        }
        let mut left_counit = SparseVec::zero();
        let mut right_counit = SparseVec::zero();
        let mut s_left = SparseVec::zero();
        let mut s_right = SparseVec::zero();
        for ((a, b), c) in cop.iter() {
            let (da, db) = (h.delta::<C>(*a), h.delta::<C>(*b));
            left_counit.add_scaled(&db, &(h.counit(&da) * c.clone()));
            right_counit.add_scaled(&da, &(h.counit(&db) * c.clone()));
            s_left.add_scaled(&h.product(&h.antipode(&da), &db), c);
            s_right.add_scaled(&h.product(&da, &h.antipode(&db)), c);
        }
        if left_counit != d || right_counit != d {
            return Err(format!("counit law fails at δ_{}", g.format_elem(x)));
        }
        let eps = one.scaled(&h.counit(&d));
        if s_left != eps || s_right != eps {
            return Err(format!("antipode law fails at δ_{}", g.format_elem(x)));
        }
        // left invariance: h_(1) ∫h_(2) = ∫(h) 1
        let mut inv = SparseVec::zero();
        for ((a, b), c) in cop.iter() {
            inv.add_scaled(&h.delta::<C>(*a), &(h.integral(&h.delta::<C>(*b)) * c.clone()));
        }
        if inv != one.scaled(&h.integral(&d)) {
            return Err(format!("integral not left-invariant at δ_{}", g.format_elem(x)));
        }
    }
    if h.integral(&one) != C::from_int(1) {
        return Err("∫1 ≠ 1".into());
    }
    Ok(())
}

/// Span dimension of `{x·E_u}` (or `{E_u·x}`) over all units.
fn side_dim(alg: &MultiMatrixAlgebra, x: &SparseVec<C>, left: bool) -> usize {
    let rows: Vec<SparseVec<C>> = (0..alg.dim())
        .map(|u| {
            let e = SparseVec::basis(u);
            if left {
                alg.mul(x, &e)
            } else {
                alg.mul(&e, x)
            }
        })
        .collect();
    linalg::rank(&rows)
}

/// `dim P ⊗_A P = Σ_b dim(P f_b)·dim(f_b P)` with `f_b` one minimal
/// idempotent per simple summand of `A`, given as the images of the source
/// units `E^(b)_{0,0}` under an injective unital embedding.
pub fn relative_dim_by_idempotents(alg: &MultiMatrixAlgebra, idempotents: &[SparseVec<C>]) -> usize {
    idempotents
        .iter()
        .map(|f| side_dim(alg, f, false) * side_dim(alg, f, true))
        .sum()
}

pub fn minimal_idempotents(b: &Bundle<C>) -> Vec<SparseVec<C>> {
    let src = &b.embedding.source;
    (0..src.num_blocks())
        .map(|k| b.embedding.images[src.index(k, 0, 0).unwrap()].clone())
        .collect()
}

fn unit(alg: &MultiMatrixAlgebra, i: usize, j: usize) -> SparseVec<C> {
    SparseVec::basis(alg.index(0, i, j).unwrap())
}

/// `ω♯(δ_η) = (1/n) Σ_{(i)≠(j)} η^{(i)−(j)}/l_(j) E_ij⊗E_ji + (1/n) I⊗I`.
pub fn case1_closed_form(lengths: &[usize]) -> Vec<PTensor<C>> {
    let n = lengths.len();
    let m: usize = lengths.iter().sum();
    let alg = MultiMatrixAlgebra::full(m).unwrap();
    let block: Vec<usize> = lengths.iter().enumerate().flat_map(|(b, &l)| vec![b; l]).collect();
    let ident: SparseVec<C> = (0..m).map(|i| (alg.index(0, i, i).unwrap(), C::from_int(1))).collect();
    (0..n as i64)
        .map(|t| {
            let mut x = tensor(&ident, &ident).scaled(&q(1, n as i64));
            for i in 0..m {
                for j in 0..m {
                    if block[i] != block[j] {
                        let c = root(n, t * (block[i] as i64 - block[j] as i64)) * q(1, (n * lengths[block[j]]) as i64);
                        x.add_scaled(&tensor(&unit(&alg, i, j), &unit(&alg, j, i)), &c);
                    }
                }
            }
            x
        })
        .collect()
}

/// `F_{a,b}` in `M_{kn}`.
pub fn f_unit(k: usize, n: usize, a: i64, b: i64) -> SparseVec<C> {
    let alg = MultiMatrixAlgebra::full(k * n).unwrap();
    let (a, b) = (a.rem_euclid(n as i64) as usize, b.rem_euclid(n as i64) as usize);
    let mut v = SparseVec::zero();
    for c in 0..k {
        v.add_term(alg.index(0, a * k + c, b * k + c).unwrap(), C::from_int(1));
    }
    v
}

/// `ω♯(δ_{(k,η)}) = (1/n) Σ_{b,s∈Z_n} η^{b−s} F_{b,s} ⊗ F_{s+k,b+k}`; entry
/// `kk·n + t` for `η = ζ_n^t`.
pub fn case2_closed_form(k: usize, n: usize) -> Vec<PTensor<C>> {
    let mut out = Vec::new();
    for kk in 0..n as i64 {
        for t in 0..n as i64 {
            let mut x = PTensor::zero();
            for b in 0..n as i64 {
                for s in 0..n as i64 {
                    let c = root(n, t * (b - s)) * q(1, n as i64);
                    x.add_scaled(&tensor(&f_unit(k, n, b, s), &f_unit(k, n, s + kk, b + kk)), &c);
                }
            }
            out.push(x);
        }
    }
    out
}

/// `ω♯(δ_i) = Σ_s 1_{,s} ⊗ 1_{,s−i}` for `B^{⊕n}`.
pub fn case3_closed_form(b: &[usize], n: usize) -> Vec<PTensor<C>> {
    let dims: Vec<usize> = (0..n).flat_map(|_| b.iter().copied()).collect();
    let alg = MultiMatrixAlgebra::new(dims).unwrap();
    let copy_one = |s: i64| -> SparseVec<C> {
        let s = s.rem_euclid(n as i64) as usize;
        let mut v = SparseVec::zero();
        for bi in 0..b.len() {
            v.add_assign(&alg.block_one(s * b.len() + bi));
        }
        v
    };
    (0..n as i64)
        .map(|i| {
            let mut x = PTensor::zero();
            for s in 0..n as i64 {
                x.add_assign(&tensor(&copy_one(s), &copy_one(s - i)));
            }
            x
        })
        .collect()
}

pub fn table_eq(conn: &Connection<C>, oracle: &[PTensor<C>]) -> Result<(), String> {
    if conn.table.len() != oracle.len() {
        return Err(format!("{} entries vs {}", conn.table.len(), oracle.len()));
    }
    for (g, (a, b)) in conn.table.iter().zip(oracle).enumerate() {
        if let Some((key, x, y)) = a.first_difference(b) {
            return Err(format!("entry {g}: coefficient at {key:?} is {x}, oracle {y}"));
        }
    }
    Ok(())
}
