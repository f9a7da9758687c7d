//! The three elementary bundles, their back maps, strong universal
//! connections (closed form and via the integral construction), and the
//! trivial bundle on `M_n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galois::{coaction_from_action, Coaction, PHTensor, PTensor};
use crate::hopf::{FiniteAbelianGroup, FnHopfAlgebra, GroupElem};
use crate::linalg::Echelon;
use crate::lincomb::{tensor, LinComb, SparseVec};
use crate::multimatrix::{
    embed_case1, embed_case2, embed_case3, AlgebraEmbedding, BlockPartition, MultiMatrixAlgebra, MultiMatrixElement,
};
use crate::report::{format_unit, tensor_to_terms, terms_to_tensor, Check, TableEntry};
use crate::scalar::RootField;

mod trivial;

pub use trivial::{trivialization_mn, trivialization_with, Trivialization};

/// Which elementary construction a bundle comes from, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum BundleCase {
    /// `M_{l_0} ⊕ … ⊕ M_{l_{n−1}} ⊂ M_m`, `H = C[Z_n]`.
    Case1 { lengths: Vec<usize> },
    /// `M_k ⊂ M_{kn}` diagonally, `H = C[Z_n × Z_n]`.
    Case2 { k: usize, n: usize },
    /// `B ⊂ B^{⊕n}` by replication, `H = C[Z_n]`.
    Case3 { b: Vec<usize>, n: usize },
}

impl BundleCase {
    pub fn number(&self) -> u8 {
        match self {
            BundleCase::Case1 { .. } => 1,
            BundleCase::Case2 { .. } => 2,
            BundleCase::Case3 { .. } => 3,
        }
    }

    pub fn params(&self) -> Value {
        match self {
            BundleCase::Case1 { lengths } => json!({ "lengths": lengths }),
            BundleCase::Case2 { k, n } => json!({ "k": k, "n": n }),
            BundleCase::Case3 { b, n } => json!({ "b": b, "n": n }),
        }
    }
}

impl fmt::Display for BundleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            BundleCase::Case1 { lengths } => write!(f, "case1 lengths=({})", join(lengths)),
            BundleCase::Case2 { k, n } => write!(f, "case2 k={k} n={n}"),
            BundleCase::Case3 { b, n } => {
                let parts: Vec<String> = b.iter().map(|d| format!("M{d}")).collect();
                write!(f, "case3 B={} n={n}", parts.join("+"))
            }
        }
    }
}

/// A comodule algebra `(P, C[G], Δ_R)` with its coinvariant subalgebra.
#[derive(Clone, Debug)]
pub struct Bundle<F: RootField> {
    pub case: BundleCase,
    pub coaction: Coaction<F>,
    /// Basis of `A`, the image of the elementary embedding.
    pub a_basis: Vec<SparseVec<F>>,
    pub embedding: AlgebraEmbedding<F>,
    /// `π(g)` with `g ▷ p = π(g) p π(g)^{-1}`, when the action is inner.
    pub projective_rep: Option<Vec<SparseVec<F>>>,
}

impl<F: RootField> Bundle<F> {
    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.coaction.algebra()
    }

    pub fn hopf(&self) -> &FnHopfAlgebra {
        self.coaction.hopf()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.coaction.hopf().group()
    }

    pub fn projective_rep_elements(&self) -> Option<Vec<MultiMatrixElement<F>>> {
        self.projective_rep.as_ref().map(|reps| {
            reps.iter()
                .map(|r| MultiMatrixElement::from_sparse(self.algebra(), r))
                .collect()
        })
    }

    /// `1 ⊗ 1` in `P ⊗ P`.
    pub fn one_one(&self) -> PTensor<F> {
        let one = self.algebra().one::<F>();
        tensor(&one, &one)
    }

    /// `1 ⊗ δ_g` in `P ⊗ H`.
    pub fn one_delta(&self, g: GroupElem) -> PHTensor<F> {
        self.algebra()
            .one::<F>()
            .iter()
            .map(|(u, c)| ((*u, g), c.clone()))
            .collect()
    }
}

fn sparse_inverse<F: RootField>(alg: &MultiMatrixAlgebra, v: &SparseVec<F>) -> Option<SparseVec<F>> {
    MultiMatrixElement::from_sparse(alg, v)
        .inverse()
        .map(|m| m.to_sparse())
}

/// Checks `π(e) = 1` and `π(x)π(y) = C_{x,y} π(xy)` with `C_{x,y} ≠ 0`.
pub fn check_projective_rep<F: RootField>(
    alg: &MultiMatrixAlgebra,
    group: &FiniteAbelianGroup,
    reps: &[SparseVec<F>],
) -> Result<()> {
    if reps[group.identity()] != alg.one() {
        return Err(Error::Structural("π(e) ≠ 1".into()));
    }
    for x in group.elements() {
        for y in group.elements() {
            let prod = alg.mul(&reps[x], &reps[y]);
            let target = &reps[group.mul(x, y)];
            let ok = target.leading().is_some_and(|(key, t)| {
                let c = prod.get(key) / t.clone();
                !c.is_zero() && prod == target.scaled(&c)
            });
            if !ok {
                return Err(Error::Structural(format!(
                    "π({})π({}) is not a multiple of π of the product",
                    group.format_elem(x),
                    group.format_elem(y)
                )));
            }
        }
    }
    Ok(())
}

/// `g ▷ E_u = π(g) E_u π(g)^{-1}` for every `g` and unit `u`.
pub fn conjugation_action<F: RootField>(
    alg: &MultiMatrixAlgebra,
    reps: &[SparseVec<F>],
) -> Result<Vec<Vec<SparseVec<F>>>> {
    reps.iter()
        .map(|r| {
            let inv = sparse_inverse(alg, r).ok_or_else(|| Error::Structural("π(g) not invertible".into()))?;
            Ok((0..alg.dim())
                .map(|u| alg.mul(&alg.mul(r, &SparseVec::basis(u)), &inv))
                .collect())
        })
        .collect()
}

fn same_subspace<F: RootField>(a: &[SparseVec<F>], b: &[SparseVec<F>]) -> bool {
    let ea = Echelon::from_rows(a);
    let eb = Echelon::from_rows(b);
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

fn finish<F: RootField>(
    case: BundleCase,
    group: FiniteAbelianGroup,
    embedding: AlgebraEmbedding<F>,
    table: Vec<Vec<SparseVec<F>>>,
    projective_rep: Option<Vec<SparseVec<F>>>,
) -> Result<Bundle<F>> {
    let hopf = FnHopfAlgebra::new(group);
    let coaction = coaction_from_action(&embedding.target, &hopf, table)?;
    let a_basis = embedding.image_basis().to_vec();
    let computed = coaction.coinvariants()?;
    if !same_subspace(&computed, &a_basis) {
        return Err(Error::Structural(format!(
            "{case}: coinvariants (dim {}) differ from the embedded subalgebra (dim {})",
            computed.len(),
            a_basis.len()
        )));
    }
    Ok(Bundle {
        case,
        coaction,
        a_basis,
        embedding,
        projective_rep,
    })
}

fn root<F: RootField>(n: usize, k: i64) -> F {
    F::root_of_unity(n as u32, k)
}

/// Case 1: `P = M_m` graded by blocks, `g_ω = diag(ω^{(i)})` acting by conjugation.
pub fn build_case1<F: RootField>(lengths: &[usize]) -> Result<Bundle<F>> {
    let part = BlockPartition::new(lengths.to_vec())?;
    let n = part.n();
    let group = FiniteAbelianGroup::cyclic(n as u32)?;
    let emb = embed_case1::<F>(&part);
    let alg = emb.target.clone();
    let reps: Vec<SparseVec<F>> = (0..n as i64)
        .map(|t| {
            (0..part.m())
                .map(|i| {
                    let u = alg.index(0, i, i).expect("in range");
                    (u, root::<F>(n, t * part.block_of(i) as i64))
                })
                .collect()
        })
        .collect();
    check_projective_rep(&alg, &group, &reps)?;
    let table = conjugation_action(&alg, &reps)?;
    finish(
        BundleCase::Case1 {
            lengths: lengths.to_vec(),
        },
        group,
        emb,
        table,
        Some(reps),
    )
}

/// `F_{a,b}`: the `k × k` identity placed in block position `(a, b)` of `M_{kn}`,
/// with block indices taken mod `n`.
pub fn block_unit<F: RootField>(k: usize, n: usize, a: i64, b: i64) -> SparseVec<F> {
    let m = k * n;
    let (a, b) = (a.rem_euclid(n as i64) as usize, b.rem_euclid(n as i64) as usize);
    (0..k).map(|c| ((a * k + c) * m + b * k + c, F::one())).collect()
}

/// Case 2: `P = M_{kn}`, `H = C[Z_n × Z_n]`, `g_{i,ω} = Σ_r ω^r F_{r,r+i}`.
pub fn build_case2<F: RootField>(k: usize, n: usize) -> Result<Bundle<F>> {
    let emb = embed_case2::<F>(k, n)?;
    let group = FiniteAbelianGroup::new(vec![n as u32, n as u32])?;
    let alg = emb.target.clone();
    let reps: Vec<SparseVec<F>> = group
        .elements()
        .map(|g| {
            let c = group.components(g);
            let (i, t) = (c[0] as i64, c[1] as i64);
            let mut v = SparseVec::zero();
            for r in 0..n as i64 {
                v.add_scaled(&block_unit(k, n, r, r + i), &root::<F>(n, t * r));
            }
            v
        })
        .collect();
    check_projective_rep(&alg, &group, &reps)?;
    let table = conjugation_action(&alg, &reps)?;
    finish(BundleCase::Case2 { k, n }, group, emb, table, Some(reps))
}

/// Case 3: `P = B^{⊕n}`, `H = C[Z_n]`, `i ▷ b_{,s} = b_{,s+i}`.
pub fn build_case3<F: RootField>(b: &MultiMatrixAlgebra, n: usize) -> Result<Bundle<F>> {
    let emb = embed_case3::<F>(b, n)?;
    let group = FiniteAbelianGroup::cyclic(n as u32)?;
    let db = b.dim();
    let table = (0..n)
        .map(|i| {
            (0..db * n)
                .map(|u| SparseVec::basis(((u / db + i) % n) * db + u % db))
                .collect()
        })
        .collect();
    finish(
        BundleCase::Case3 {
            b: b.block_dims().to_vec(),
            n,
        },
        group,
        emb,
        table,
        None,
    )
}

/// Builds the bundle described by `case`.
pub fn build<F: RootField>(case: &BundleCase) -> Result<Bundle<F>> {
    match case {
        BundleCase::Case1 { lengths } => build_case1(lengths),
        BundleCase::Case2 { k, n } => build_case2(*k, *n),
        BundleCase::Case3 { b, n } => build_case3(&MultiMatrixAlgebra::new(b.clone())?, *n),
    }
}

/// A linear map `C[G] → P ⊗ P` given on the δ-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorTable<F: RootField> {
    pub table: Vec<PTensor<F>>,
}

/// A section `h ↦ h^{(1)} ⊗ h^{(2)}` of the canonical map.
pub type BackMap<F> = TensorTable<F>;
/// A strong universal connection `ω♯`.
pub type Connection<F> = TensorTable<F>;

impl<F: RootField> TensorTable<F> {
    pub fn get(&self, g: GroupElem) -> &PTensor<F> {
        &self.table[g]
    }

    /// The value on `1 = Σ_g δ_g`.
    pub fn on_one(&self) -> PTensor<F> {
        let mut out = PTensor::zero();
        for t in &self.table {
            out.add_assign(t);
        }
        out
    }

    /// Negative control: the table with entries `a` and `b` exchanged.
    pub fn swapped(&self, a: GroupElem, b: GroupElem) -> Self {
        let mut table = self.table.clone();
        table.swap(a, b);
        TensorTable { table }
    }

    /// Checks `ver♯(table(δ_g)) = 1 ⊗ δ_g` for every `g`; the first failure is the witness.
    pub fn check_section(&self, bundle: &Bundle<F>) -> Option<String> {
        bundle.group().elements().find_map(|g| {
            let img = bundle.coaction.canonical(&self.table[g]);
            let want = bundle.one_delta(g);
            img.first_difference(&want).map(|((u, h), got, exp)| {
                format!(
                    "h = δ_{}: coefficient of {}⊗δ_{} is {got}, expected {exp}",
                    bundle.group().format_elem(g),
                    format_unit(bundle.algebra(), u),
                    bundle.group().format_elem(h)
                )
            })
        })
    }
}

/// The explicit sections of the canonical map for the three cases, with the
/// identity entry fixed by `Σ_g δ_g ↦ 1 ⊗ 1`.
pub fn back_map<F: RootField>(bundle: &Bundle<F>) -> BackMap<F> {
    let group = bundle.group();
    let order = group.order();
    let e = group.identity();
    let mut table = vec![PTensor::zero(); order];
    match &bundle.case {
        BundleCase::Case1 { lengths } => {
            let part = BlockPartition::new(lengths.clone()).expect("validated");
            let (n, m) = (part.n(), part.m());
            let alg = bundle.algebra();
            for g in group.elements().filter(|g| *g != e) {
                let t = g as i64;
                let mut x = PTensor::zero();
                for i in 0..m {
                    for j in 0..m {
                        let (bi, bj) = (part.block_of(i) as i64, part.block_of(j) as i64);
                        let c = root::<F>(n, t * (bi - bj))
                            * F::from_ratio(1, (n * part.length_of_block_containing(j)) as i64);
                        let ij = alg.index(0, i, j).expect("in range");
                        let ji = alg.index(0, j, i).expect("in range");
                        x.add_term((ij, ji), c);
                    }
                }
                table[g] = x;
            }
        }
        BundleCase::Case2 { k, n } => {
            let (k, n) = (*k, *n);
            for g in group.elements().filter(|g| *g != e) {
                let c = group.components(g);
                let (i, t) = (c[0] as i64, c[1] as i64);
                let mut x = PTensor::zero();
                for j in 0..n as i64 {
                    for a in 0..n as i64 {
                        let coeff = root::<F>(n, t * (i - j + a)) * F::from_ratio(1, n as i64);
                        let l = block_unit::<F>(k, n, a, j - i);
                        let r = block_unit::<F>(k, n, j, i + a);
                        x.add_scaled(&tensor(&l, &r), &coeff);
                    }
                }
                table[g] = x;
            }
        }
        BundleCase::Case3 { b, n } => {
            let b = MultiMatrixAlgebra::new(b.clone()).expect("validated");
            let nb = b.num_blocks();
            let alg = bundle.algebra();
            let comp_one = |s: usize| -> SparseVec<F> {
                let mut v = SparseVec::zero();
                for blk in 0..nb {
                    v.add_assign(&alg.block_one(s * nb + blk));
                }
                v
            };
            for (i, entry) in table.iter_mut().enumerate() {
                *entry = (0..*n)
                    .map(|t| tensor(&comp_one(t), &comp_one((t + n - i) % n)))
                    .fold(PTensor::zero(), |mut acc, x| {
                        acc.add_assign(&x);
                        acc
                    });
            }
            return TensorTable { table };
        }
    }
    let mut rest = bundle.one_one();
    for g in group.elements().filter(|g| *g != e) {
        rest = rest.sub(&table[g]);
    }
    table[e] = rest;
    TensorTable { table }
}

/// The integral construction: with `b(h, g) = ∫ h S(g)`,
/// `a_R(p ⊗ h) = p_[0] b(p_[1], h)`, `a_L(h ⊗ p) = b(h, S^{-1} p_[1]) p_[0]` and
/// `ω♯(h) = a_L(h_(1) ⊗ h_(2)^{(1)}) ⊗ a_R(h_(2)^{(2)} ⊗ h_(3))`.
pub fn integral_connection<F: RootField>(bundle: &Bundle<F>, back: &BackMap<F>) -> Connection<F> {
    let hopf = bundle.hopf();
    let group = hopf.group();
    let dim = bundle.algebra().dim();
    let b = |h: &SparseVec<F>, g: &SparseVec<F>| -> F { hopf.integral(&hopf.product(h, &hopf.antipode(g))) };
    let deltas: Vec<SparseVec<F>> = group.elements().map(|g| hopf.delta::<F>(g)).collect();
    let act = |g: GroupElem, u: usize| bundle.coaction.act(g, &SparseVec::basis(u));
    // a_r[u][z] = a_R(E_u ⊗ δ_z), a_l[x][u] = a_L(δ_x ⊗ E_u)
    let a_r: Vec<Vec<SparseVec<F>>> = (0..dim)
        .map(|u| {
            group
                .elements()
                .map(|z| {
                    let mut out = SparseVec::zero();
                    for g in group.elements() {
                        let c = b(&deltas[g], &deltas[z]);
                        if !c.is_zero() {
                            out.add_scaled(&act(g, u), &c);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    let a_l: Vec<Vec<SparseVec<F>>> = group
        .elements()
        .map(|x| {
            (0..dim)
                .map(|u| {
                    let mut out = SparseVec::zero();
                    for g in group.elements() {
                        let c = b(&deltas[x], &hopf.antipode_inverse(&deltas[g]));
                        if !c.is_zero() {
                            out.add_scaled(&act(g, u), &c);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    let table = group
        .elements()
        .map(|g| {
            let mut out = PTensor::zero();
            for ((x, y, z), c) in hopf.coproduct2(&deltas[g]).iter() {
                for ((p, q), d) in back.get(*y).iter() {
                    let coeff = c.clone() * d.clone();
                    out.add_scaled(&tensor(&a_l[*x][*p], &a_r[*q][*z]), &coeff);
                }
            }
            out
        })
        .collect();
    TensorTable { table }
}

/// The closed-form connections of the three cases.
///
/// Case 2 uses `ω♯(δ_{(k,η)}) = (1/n) Σ_{b,s ∈ Z_n} η^{b−s} F_{b,s} ⊗ F_{s+k,b+k}`;
/// see [`case2_printed_connection`] for the variants with the extra
/// `F_{b,b} ⊗ F_{i+k+b,i+k+b}` term.
pub fn closed_form_connection<F: RootField>(bundle: &Bundle<F>) -> Connection<F> {
    let group = bundle.group();
    let alg = bundle.algebra();
    let table = match &bundle.case {
        BundleCase::Case1 { lengths } => {
            let part = BlockPartition::new(lengths.clone()).expect("validated");
            let (n, m) = (part.n(), part.m());
            let one_one = bundle.one_one().scaled(&F::from_ratio(1, n as i64));
            group
                .elements()
                .map(|g| {
                    let mut x = one_one.clone();
                    for i in 0..m {
                        for j in 0..m {
                            let (bi, bj) = (part.block_of(i) as i64, part.block_of(j) as i64);
                            if bi == bj {
                                continue;
                            }
                            let c = root::<F>(n, g as i64 * (bi - bj))
                                * F::from_ratio(1, (n * part.length_of_block_containing(j)) as i64);
                            let ij = alg.index(0, i, j).expect("in range");
                            let ji = alg.index(0, j, i).expect("in range");
                            x.add_term((ij, ji), c);
                        }
                    }
                    x
                })
                .collect()
        }
        BundleCase::Case2 { k, n } => {
            return case2_connection_terms(*k, *n, group, Case2Form::Corrected);
        }
        BundleCase::Case3 { .. } => {
            // Same table as the back map: Σ_s 1_{,s} ⊗ 1_{,s−i}.
            return back_map(bundle);
        }
    };
    TensorTable { table }
}

/// Readings of the printed Case 2 formula
/// `(1/n) Σ η^{b−s} F_{b,s} ⊗ F_{s+k,b+k} − (1/n²) Σ F_{b,b} ⊗ F_{i+k+b,i+k+b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case2Form {
    /// Both sums over block indices `Z_n` as printed.
    PrintedBlockIndex,
    /// Both sums over `Z_m`, `m = kn`, block indices reduced mod `n`.
    PrintedRawZm,
    /// First sum only, over `Z_n`.
    Corrected,
}

fn case2_connection_terms<F: RootField>(
    k: usize,
    n: usize,
    group: &FiniteAbelianGroup,
    form: Case2Form,
) -> Connection<F> {
    let range = match form {
        Case2Form::PrintedRawZm => (k * n) as i64,
        _ => n as i64,
    };
    let table = group
        .elements()
        .map(|g| {
            let c = group.components(g);
            let (kk, t) = (c[0] as i64, c[1] as i64);
            let mut x = PTensor::zero();
            let inv_n = F::from_ratio(1, n as i64);
            for b in 0..range {
                for s in 0..range {
                    let coeff = root::<F>(n, t * (b - s)) * inv_n.clone();
                    let l = block_unit::<F>(k, n, b, s);
                    let r = block_unit::<F>(k, n, s + kk, b + kk);
                    x.add_scaled(&tensor(&l, &r), &coeff);
                }
            }
            if form != Case2Form::Corrected {
                let c = -F::from_ratio(1, (n * n) as i64);
                for b in 0..range {
                    for i in 0..range {
                        let l = block_unit::<F>(k, n, b, b);
                        let r = block_unit::<F>(k, n, i + kk + b, i + kk + b);
                        x.add_scaled(&tensor(&l, &r), &c);
                    }
                }
            }
            x
        })
        .collect();
    TensorTable { table }
}

/// The printed Case 2 formula under the given reading, for discrepancy reports.
pub fn case2_printed_connection<F: RootField>(k: usize, n: usize, form: Case2Form) -> Result<Connection<F>> {
    let group = FiniteAbelianGroup::new(vec![n as u32, n as u32])?;
    Ok(case2_connection_terms(k, n, &group, form))
}

/// Result of [`verify_strong_connection`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongConnectionReport {
    pub checks: Vec<Check>,
}

impl StrongConnectionReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

type Triple<F> = LinComb<(usize, usize, GroupElem), F>;

/// Checks, on every δ-basis element: `ver♯ω♯(h) = 1 ⊗ h`, the right-leg and
/// left-leg covariance conditions, and `ω♯(1) = 1 ⊗ 1`.
pub fn verify_strong_connection<F: RootField>(bundle: &Bundle<F>, conn: &Connection<F>) -> StrongConnectionReport {
    let group = bundle.group();
    let alg = bundle.algebra();
    let co = &bundle.coaction;
    let fmt_g = |g: GroupElem| group.format_elem(g);

    let section = Check::from_witness("ver♯∘ω♯(h) = 1⊗h", conn.check_section(bundle));

    // h^(1) ⊗ h^(2)_[0] ⊗ h^(2)_[1] = h_(1)^(1) ⊗ h_(1)^(2) ⊗ h_(2), keyed (p, q, h)
    let right = group.elements().find_map(|g| {
        let mut lhs = Triple::zero();
        for ((p, q), c) in conn.get(g).iter() {
            for w in group.elements() {
                for (q2, d) in co.act(w, &SparseVec::basis(*q)).iter() {
                    lhs.add_term((*p, *q2, w), c.clone() * d.clone());
                }
            }
        }
        let mut rhs = Triple::zero();
        for x in group.elements() {
            let y = group.mul(group.inv(x), g);
            for ((p, q), c) in conn.get(x).iter() {
                rhs.add_term((*p, *q, y), c.clone());
            }
        }
        lhs.first_difference(&rhs).map(|((p, q, h), a, b)| {
            format!(
                "h = δ_{}: term {}⊗{}⊗δ_{} is {a} on the left, {b} on the right",
                fmt_g(g),
                format_unit(alg, p),
                format_unit(alg, q),
                fmt_g(h)
            )
        })
    });

    // h^(1)_[0] ⊗ h^(1)_[1] ⊗ h^(2) = h_(2)^(1) ⊗ S h_(1) ⊗ h_(2)^(2), keyed (p, h, q)
    let left = group.elements().find_map(|g| {
        let mut lhs = Triple::zero();
        for ((p, q), c) in conn.get(g).iter() {
            for w in group.elements() {
                for (p2, d) in co.act(w, &SparseVec::basis(*p)).iter() {
                    lhs.add_term((*p2, *q, w), c.clone() * d.clone());
                }
            }
        }
        let mut rhs = Triple::zero();
        for x in group.elements() {
            let y = group.mul(group.inv(x), g);
            for ((p, q), c) in conn.get(y).iter() {
                rhs.add_term((*p, *q, group.inv(x)), c.clone());
            }
        }
        lhs.first_difference(&rhs).map(|((p, q, h), a, b)| {
            format!(
                "h = δ_{}: term {}⊗δ_{}⊗{} is {a} on the left, {b} on the right",
                fmt_g(g),
                format_unit(alg, p),
                fmt_g(h),
                format_unit(alg, q)
            )
        })
    });

    let unit = conn
        .on_one()
        .first_difference(&bundle.one_one())
        .map(|((p, q), a, b)| {
            format!(
                "coefficient of {}⊗{} is {a}, expected {b}",
                format_unit(alg, p),
                format_unit(alg, q)
            )
        });

    StrongConnectionReport {
        checks: vec![
            section,
            Check::from_witness("right-leg covariance", right),
            Check::from_witness("left-leg covariance", left),
            Check::from_witness("ω♯(1) = 1⊗1", unit),
        ],
    }
}

/// First group element where two tables differ, with the differing term.
pub fn table_difference<F: RootField>(bundle: &Bundle<F>, a: &Connection<F>, b: &Connection<F>) -> Option<String> {
    let alg = bundle.algebra();
    bundle.group().elements().find_map(|g| {
        a.get(g).first_difference(b.get(g)).map(|((p, q), x, y)| {
            format!(
                "δ_{}: coefficient of {}⊗{} is {x} vs {y}",
                bundle.group().format_elem(g),
                format_unit(alg, p),
                format_unit(alg, q)
            )
        })
    })
}


/// JSON form of a connection table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionDump {
    pub case: u8,
    pub params: Value,
    pub algebra: Vec<usize>,
    pub group: String,
    pub table: Vec<TableEntry>,
}

pub fn connection_to_json<F: RootField>(bundle: &Bundle<F>, conn: &Connection<F>) -> ConnectionDump {
    ConnectionDump {
        case: bundle.case.number(),
        params: bundle.case.params(),
        algebra: bundle.algebra().block_dims().to_vec(),
        group: bundle.group().to_string(),
        table: bundle
            .group()
            .elements()
            .map(|g| TableEntry {
                element: bundle.group().format_elem(g),
                terms: tensor_to_terms(bundle.algebra(), conn.get(g)),
            })
            .collect(),
    }
}

pub fn connection_from_json<F: RootField>(dump: &ConnectionDump) -> Result<Connection<F>> {
    let alg = MultiMatrixAlgebra::new(dump.algebra.clone())?;
    let group: FiniteAbelianGroup = dump.group.parse()?;
    let mut table = vec![PTensor::zero(); group.order()];
    for entry in &dump.table {
        let g = group.parse_elem(&entry.element)?;
        table[g].add_assign(&terms_to_tensor(&alg, &entry.terms)?);
    }
    Ok(TensorTable { table })
}
