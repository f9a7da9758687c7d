//! First-order calculi on `C[G]` from subsets `𝒞 ⊆ G∖{e}`, the vertical map
//! on 1-forms, and the central-generator calculi they induce on `M_m`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundles::Bundle;
use crate::error::{Error, Result};
use crate::hopf::{FiniteAbelianGroup, FnHopfAlgebra, GroupElem, HopfElement};
use crate::linalg::{self, Echelon};
use crate::lincomb::{LinComb, SparseVec};
use crate::multimatrix::MultiMatrixAlgebra;
use crate::report::{format_element, format_unit, Check};
use crate::scalar::{Field, RootField};

/// `Σ f_{h,i} δ_h e_{𝒞[i]}` in `Λ¹_H`.
pub type HForm<F> = LinComb<(GroupElem, usize), F>;
/// `Σ c_{u,i} E_u ⊗ e_{𝒞[i]}` in `P ⊗ Λ¹`.
pub type PForm<F> = LinComb<(usize, usize), F>;

/// Parses `"(0,1),(1,1)"` into group elements.
pub fn parse_subset(group: &FiniteAbelianGroup, text: &str) -> Result<Vec<GroupElem>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let start = rest
            .find('(')
            .ok_or_else(|| Error::InvalidSubset(format!("expected '(' in {text:?}")))?;
        let end = rest[start..]
            .find(')')
            .ok_or_else(|| Error::InvalidSubset(format!("unclosed '(' in {text:?}")))?
            + start;
        out.push(group.parse_elem(&rest[start..=end])?);
        rest = rest[end + 1..].trim_start_matches([',', ' ']);
    }
    Ok(out)
}

/// The left-covariant calculus on `C[G]` with basis `e_a`, `a ∈ 𝒞`:
/// `e_a f = R_a(f) e_a`, `df = Σ_a (R_a f − f) e_a`, `R_a(δ_g) = δ_{g a^{-1}}`.
#[derive(Clone, Debug)]
pub struct GroupCalculus {
    hopf: FnHopfAlgebra,
    subset: Vec<GroupElem>,
}

pub fn group_calculus(hopf: &FnHopfAlgebra, subset: &[GroupElem]) -> Result<GroupCalculus> {
    let group = hopf.group();
    for (i, a) in subset.iter().enumerate() {
        if *a >= group.order() {
            return Err(Error::InvalidSubset(format!("element index {a} outside the group")));
        }
        if *a == group.identity() {
            return Err(Error::InvalidSubset("the identity cannot belong to 𝒞".into()));
        }
        if subset[..i].contains(a) {
            return Err(Error::InvalidSubset(format!("{} repeated", group.format_elem(*a))));
        }
    }
    Ok(GroupCalculus {
        hopf: hopf.clone(),
        subset: subset.to_vec(),
    })
}

impl GroupCalculus {
    pub fn hopf(&self) -> &FnHopfAlgebra {
        &self.hopf
    }

    pub fn subset(&self) -> &[GroupElem] {
        &self.subset
    }

    pub fn rank(&self) -> usize {
        self.subset.len()
    }

    pub fn right_translate<F: Field>(&self, a: GroupElem, f: &HopfElement<F>) -> HopfElement<F> {
        let g = self.hopf.group();
        f.map_keys(|&h| g.mul(h, g.inv(a)))
    }

    pub fn d<F: Field>(&self, f: &HopfElement<F>) -> HForm<F> {
        let mut out = HForm::zero();
        for (i, a) in self.subset.iter().enumerate() {
            let diff = self.right_translate(*a, f).sub(f);
            for (h, c) in diff.iter() {
                out.add_term((*h, i), c.clone());
            }
        }
        out
    }

    pub fn left_mul<F: Field>(&self, f: &HopfElement<F>, w: &HForm<F>) -> HForm<F> {
        w.iter().map(|((h, i), c)| ((*h, *i), f.get(h) * c.clone())).collect()
    }

    /// `(δ_h e_a) f = δ_h R_a(f) e_a`.
    pub fn right_mul<F: Field>(&self, w: &HForm<F>, f: &HopfElement<F>) -> HForm<F> {
        w.iter()
            .map(|((h, i), c)| {
                let r = self.right_translate(self.subset[*i], f);
                ((*h, *i), c.clone() * r.get(h))
            })
            .collect()
    }

    /// `e_a ◁ h = Σ S(h_(1)) e_a h_(2)`.
    pub fn adjoint<F: Field>(&self, i: usize, h: &HopfElement<F>) -> HForm<F> {
        let e_a: HForm<F> = self.hopf.group().elements().map(|x| ((x, i), F::one())).collect();
        let mut out = HForm::zero();
        for ((x, y), c) in self.hopf.coproduct(h).iter() {
            let left = self.hopf.antipode(&self.hopf.delta::<F>(*x));
            let term = self.right_mul(&self.left_mul(&left, &e_a), &self.hopf.delta::<F>(*y));
            out.add_scaled(&term, c);
        }
        out
    }

    /// Leibniz rule on all pairs of δ-functions.
    pub fn check_leibniz<F: Field>(&self) -> Check {
        let group = self.hopf.group();
        let witness = group.elements().find_map(|x| {
            group.elements().find_map(|y| {
                let (f, g) = (self.hopf.delta::<F>(x), self.hopf.delta::<F>(y));
                let lhs = self.d(&self.hopf.product(&f, &g));
                let mut rhs = self.right_mul(&self.d(&f), &g);
                rhs.add_assign(&self.left_mul(&f, &self.d(&g)));
                (lhs != rhs).then(|| format!("f = δ_{}, g = δ_{}", group.format_elem(x), group.format_elem(y)))
            })
        });
        Check::from_witness("Leibniz on C[G]", witness)
    }

    /// `e_a ◁ δ_g = δ_{g,a} e_a` for all `a ∈ 𝒞`, `g ∈ G`.
    pub fn check_adjoint<F: Field>(&self) -> Check {
        let group = self.hopf.group();
        let witness = (0..self.rank()).find_map(|i| {
            group.elements().find_map(|g| {
                let got = self.adjoint::<F>(i, &self.hopf.delta(g));
                let want: HForm<F> = if g == self.subset[i] {
                    group.elements().map(|x| ((x, i), F::one())).collect()
                } else {
                    HForm::zero()
                };
                (got != want).then(|| {
                    format!(
                        "e_{} ◁ δ_{}",
                        group.format_elem(self.subset[i]),
                        group.format_elem(g)
                    )
                })
            })
        });
        Check::from_witness("adjoint action e_a◁δ_g = δ_{g,a}e_a", witness)
    }
}

/// `ver: Ω¹_P → P ⊗ Λ¹`, `ver(p dq) = p q_[0] ⊗ S(q_[1]) dq_[2]`.
#[derive(Clone, Debug)]
pub struct VerticalMap<'a, F: RootField> {
    bundle: &'a Bundle<F>,
    calc: &'a GroupCalculus,
}

pub fn vertical_on_forms<'a, F: RootField>(bundle: &'a Bundle<F>, calc: &'a GroupCalculus) -> Result<VerticalMap<'a, F>> {
    if bundle.group() != calc.hopf().group() {
        return Err(Error::InvalidGroup("calculus and bundle use different groups".into()));
    }
    Ok(VerticalMap { bundle, calc })
}

impl<F: RootField> VerticalMap<'_, F> {
    /// `ver(dq)` for a basis unit `q`, from the Sweedler formula. The
    /// `H`-coefficient of each term must come out constant (left invariant).
    pub fn ver_d(&self, q: usize) -> Result<PForm<F>> {
        let group = self.calc.hopf().group();
        let hopf = self.calc.hopf();
        let mut raw: LinComb<(usize, usize, GroupElem), F> = LinComb::zero();
        for x in group.elements() {
            for y in group.elements() {
                let acted = self.bundle.coaction.act(group.mul(x, y), &SparseVec::basis(q));
                let form = self
                    .calc
                    .left_mul(&hopf.antipode(&hopf.delta::<F>(x)), &self.calc.d(&hopf.delta::<F>(y)));
                for (u, c) in acted.iter() {
                    for ((h, i), d) in form.iter() {
                        raw.add_term((*u, *i, *h), c.clone() * d.clone());
                    }
                }
            }
        }
        let mut out = PForm::zero();
        let mut seen: Vec<((usize, usize), F)> = Vec::new();
        for ((u, i, _), c) in raw.iter() {
            if let Some((_, prev)) = seen.iter().find(|(k, _)| *k == (*u, *i)) {
                if prev != c {
                    return Err(Error::Structural("ver(dq) is not left invariant".into()));
                }
            } else {
                seen.push(((*u, *i), c.clone()));
            }
        }
        for ((u, i), c) in seen {
            let count = raw.iter().filter(|((v, j, _), _)| *v == u && *j == i).count();
            if count != group.order() {
                return Err(Error::Structural("ver(dq) is not left invariant".into()));
            }
            out.add_term((u, i), c);
        }
        Ok(out)
    }

    /// `ver(p dq) = p · ver(dq)`.
    pub fn ver(&self, p: usize, q: usize) -> Result<PForm<F>> {
        Ok(left_mul_form(self.bundle.algebra(), &SparseVec::basis(p), &self.ver_d(q)?))
    }

    /// `Σ_a (a ▷ q − q) ⊗ e_a`.
    pub fn closed_form(&self, q: usize) -> PForm<F> {
        let mut out = PForm::zero();
        let qv = SparseVec::basis(q);
        for (i, a) in self.calc.subset().iter().enumerate() {
            for (u, c) in self.bundle.coaction.act(*a, &qv).sub(&qv).iter() {
                out.add_term((*u, i), c.clone());
            }
        }
        out
    }

    /// `ver` on a universal 1-form `Σ p_i ⊗ q_i` with `Σ p_i q_i = 0`.
    pub fn ver_universal(&self, xi: &crate::galois::PTensor<F>) -> Result<PForm<F>> {
        let alg = self.bundle.algebra();
        let mut out = PForm::zero();
        for ((p, q), c) in xi.iter() {
            out.add_scaled(&self.ver(*p, *q)?, c);
        }
        let prod = xi.iter().fold(SparseVec::zero(), |mut acc, ((p, q), c)| {
            if let Some(r) = alg.mul_units(*p, *q) {
                acc.add_term(r, c.clone());
            }
            acc
        });
        if !prod.is_zero() {
            return Err(Error::InvalidParameter("not a universal 1-form (m(ξ) ≠ 0)".into()));
        }
        Ok(out)
    }
}

fn left_mul_form<F: Field>(alg: &MultiMatrixAlgebra, p: &SparseVec<F>, w: &PForm<F>) -> PForm<F> {
    let mut out = PForm::zero();
    for ((u, i), c) in w.iter() {
        for (x, d) in p.iter() {
            if let Some(r) = alg.mul_units(*x, *u) {
                out.add_term((r, *i), d.clone() * c.clone());
            }
        }
    }
    out
}

fn right_mul_form<F: Field>(alg: &MultiMatrixAlgebra, w: &PForm<F>, q: &SparseVec<F>) -> PForm<F> {
    let mut out = PForm::zero();
    for ((u, i), c) in w.iter() {
        for (x, d) in q.iter() {
            if let Some(r) = alg.mul_units(*u, *x) {
                out.add_term((r, *i), c.clone() * d.clone());
            }
        }
    }
    out
}

/// `Ω¹_P = P ⊗ Λ¹` with central generators and `dp = Σ_a [π(a), p] ⊗ e_a`.
#[derive(Clone, Debug)]
pub struct MatrixCalculus<'a, F: RootField> {
    bundle: &'a Bundle<F>,
    calc: GroupCalculus,
    reps: Vec<SparseVec<F>>,
    rep_inverses: Vec<SparseVec<F>>,
}

pub fn matrix_calculus<'a, F: RootField>(bundle: &'a Bundle<F>, subset: &[GroupElem]) -> Result<MatrixCalculus<'a, F>> {
    let all = bundle.projective_rep.as_ref().ok_or(Error::MissingProjectiveRep)?;
    let calc = group_calculus(bundle.hopf(), subset)?;
    let alg = bundle.algebra();
    let reps: Vec<SparseVec<F>> = subset.iter().map(|a| all[*a].clone()).collect();
    let rep_inverses = reps
        .iter()
        .map(|r| {
            crate::multimatrix::MultiMatrixElement::from_sparse(alg, r)
                .inverse()
                .map(|m| m.to_sparse())
                .ok_or_else(|| Error::Structural("π(a) not invertible".into()))
        })
        .collect::<Result<_>>()?;
    Ok(MatrixCalculus {
        bundle,
        calc,
        reps,
        rep_inverses,
    })
}

impl<F: RootField> MatrixCalculus<'_, F> {
    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.bundle.algebra()
    }

    pub fn group_calculus(&self) -> &GroupCalculus {
        &self.calc
    }

    pub fn rank(&self) -> usize {
        self.calc.rank()
    }

    pub fn reps(&self) -> &[SparseVec<F>] {
        &self.reps
    }

    /// `dp = Σ_a [π(a), p] ⊗ e_a`.
    pub fn d(&self, p: &SparseVec<F>) -> PForm<F> {
        let alg = self.algebra();
        let mut out = PForm::zero();
        for (i, r) in self.reps.iter().enumerate() {
            for (u, c) in alg.mul(r, p).sub(&alg.mul(p, r)).iter() {
                out.add_term((*u, i), c.clone());
            }
        }
        out
    }

    /// `Φ(p ⊗ e_a) = p π(a) ⊗ e_a`.
    pub fn twist(&self, w: &PForm<F>) -> PForm<F> {
        self.twist_by(w, &self.reps)
    }

    pub fn untwist(&self, w: &PForm<F>) -> PForm<F> {
        self.twist_by(w, &self.rep_inverses)
    }

    fn twist_by(&self, w: &PForm<F>, by: &[SparseVec<F>]) -> PForm<F> {
        let alg = self.algebra();
        let mut out = PForm::zero();
        for ((u, i), c) in w.iter() {
            for (x, d) in alg.mul(&SparseVec::basis(*u), &by[*i]).iter() {
                out.add_term((*x, *i), c.clone() * d.clone());
            }
        }
        out
    }

    /// `(p ⊗ e_a)·q = p (a ▷ q) ⊗ e_a` on the untwisted side.
    pub fn right_action_untwisted(&self, w: &PForm<F>, q: &SparseVec<F>) -> PForm<F> {
        let alg = self.algebra();
        let mut out = PForm::zero();
        for ((u, i), c) in w.iter() {
            let aq = self.bundle.coaction.act(self.calc.subset()[*i], q);
            for (x, d) in alg.mul(&SparseVec::basis(*u), &aq).iter() {
                out.add_term((*x, *i), c.clone() * d.clone());
            }
        }
        out
    }

    pub fn check_leibniz(&self) -> Check {
        let alg = self.algebra();
        let dim = alg.dim();
        let witness = (0..dim).find_map(|a| {
            (0..dim).find_map(|b| {
                let (p, q) = (SparseVec::<F>::basis(a), SparseVec::<F>::basis(b));
                let lhs = self.d(&alg.mul(&p, &q));
                let mut rhs = right_mul_form(alg, &self.d(&p), &q);
                rhs.add_assign(&left_mul_form(alg, &p, &self.d(&q)));
                (lhs != rhs).then(|| format!("p = {}, q = {}", format_unit(alg, a), format_unit(alg, b)))
            })
        });
        Check::from_witness("Leibniz on P", witness)
    }

    /// `d = Φ ∘ ver ∘ d` on every unit, with `ver` from the Sweedler formula.
    pub fn check_against_vertical(&self) -> Result<Check> {
        let ver = vertical_on_forms(self.bundle, &self.calc)?;
        let alg = self.algebra();
        for u in 0..alg.dim() {
            let via = ver.ver_d(u)?;
            if via != ver.closed_form(u) {
                return Ok(Check::fail(
                    "d = Φ∘ver∘d",
                    format!("ver(d{}) differs from Σ(a▷p − p)⊗e_a", format_unit(alg, u)),
                ));
            }
            if self.twist(&via) != self.d(&SparseVec::basis(u)) {
                return Ok(Check::fail("d = Φ∘ver∘d", format!("at p = {}", format_unit(alg, u))));
            }
        }
        Ok(Check::pass("d = Φ∘ver∘d"))
    }

    /// `Φ((p ⊗ e_a)·q) = Φ(p ⊗ e_a)·(q ⊗ 1)` on all basis pairs.
    pub fn check_centrality(&self) -> Check {
        let alg = self.algebra();
        let witness = (0..alg.dim()).find_map(|u| {
            (0..self.rank()).find_map(|i| {
                (0..alg.dim()).find_map(|q| {
                    let w = PForm::basis((u, i));
                    let qv = SparseVec::basis(q);
                    let lhs = self.twist(&self.right_action_untwisted(&w, &qv));
                    let rhs = right_mul_form(alg, &self.twist(&w), &qv);
                    (lhs != rhs).then(|| format!("p = {}, a = #{i}, q = {}", format_unit(alg, u), format_unit(alg, q)))
                })
            })
        });
        Check::from_witness("generators central after twist", witness)
    }

    /// `ver` restricted to `P·dP` is `Φ^{-1}`, and `P·dP` spans `P ⊗ Λ¹`.
    /// Returns the check and the dimension of `span{p dq}`.
    pub fn check_ver_isomorphism(&self) -> Result<(Check, usize)> {
        let ver = vertical_on_forms(self.bundle, &self.calc)?;
        let alg = self.algebra();
        let dim = alg.dim();
        let rank = self.rank();
        let mut span = Echelon::new();
        for p in 0..dim {
            for q in 0..dim {
                let form = left_mul_form(alg, &SparseVec::basis(p), &self.d(&SparseVec::basis(q)));
                if ver.ver(p, q)? != self.untwist(&form) {
                    return Ok((
                        Check::fail(
                            "ver: Ω¹_P ≅ P⊗Λ¹",
                            format!("ver({} d{}) ≠ Φ⁻¹", format_unit(alg, p), format_unit(alg, q)),
                        ),
                        span.rank(),
                    ));
                }
                span.insert(form.map_keys(|&(u, i)| u * rank + i));
            }
        }
        let full = dim * rank;
        let check = Check::from_witness(
            "ver: Ω¹_P ≅ P⊗Λ¹",
            (span.rank() != full).then(|| format!("P·dP has dimension {} < {full}", span.rank())),
        );
        Ok((check, span.rank()))
    }

    /// Solves `dp = Σ_a [θ_a, p] ⊗ e_a` for `θ_a`, normalized to be traceless
    /// in each block. `None` when `d` is not inner.
    pub fn inner_element(&self) -> Option<Vec<SparseVec<F>>> {
        let alg = self.algebra();
        let dim = alg.dim();
        let rank = self.rank();
        // unknown (i, v) ↦ column i·dim + v; equation per (p, output unit w, i)
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for p in 0..dim {
            let pv = SparseVec::<F>::basis(p);
            let dp = self.d(&pv);
            for i in 0..rank {
                let mut eqs: std::collections::BTreeMap<usize, SparseVec<F>> = Default::default();
                for v in 0..dim {
                    let vv = SparseVec::basis(v);
                    let comm = alg.mul(&vv, &pv).sub(&alg.mul(&pv, &vv));
                    for (w, c) in comm.iter() {
                        eqs.entry(*w).or_default().add_term(i * dim + v, c.clone());
                    }
                }
                for w in 0..dim {
                    let row = eqs.remove(&w).unwrap_or_default();
                    let target = dp.get(&(w, i));
                    if row.is_zero() && target.is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(target);
                }
            }
        }
        let sol = linalg::solve_linear(&rows, &rhs, rank * dim)?;
        Some(
            (0..rank)
                .map(|i| {
                    let theta: SparseVec<F> = (0..dim).map(|v| (v, sol[i * dim + v].clone())).collect();
                    traceless(alg, &theta)
                })
                .collect(),
        )
    }
}

/// Removes the scalar part of each block.
fn traceless<F: Field>(alg: &MultiMatrixAlgebra, x: &SparseVec<F>) -> SparseVec<F> {
    let mut out = x.clone();
    for b in 0..alg.num_blocks() {
        let d = alg.block_dims()[b];
        let tr = (0..d).fold(F::zero(), |acc, i| acc + x.get(&alg.index(b, i, i).expect("in range")));
        let c = tr / F::from_int(d as i64);
        out.add_scaled(&alg.block_one(b), &-c);
    }
    out
}

/// Reduced-echelon basis of `span{θ_a}`, the components of the inner element.
pub fn inner_components<F: Field>(thetas: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::from_rows(thetas);
    e.make_reduced();
    e.rows().cloned().collect()
}

/// `ker(m: P ⊗ P → P)`, the universal calculus, as a basis of tensors.
pub fn universal_calculus_basis<F: Field>(alg: &MultiMatrixAlgebra) -> Vec<crate::galois::PTensor<F>> {
    let dim = alg.dim();
    let mut rows: std::collections::BTreeMap<usize, SparseVec<F>> = Default::default();
    for p in 0..dim {
        for q in 0..dim {
            if let Some(r) = alg.mul_units(p, q) {
                rows.entry(r).or_default().add_term(p * dim + q, F::one());
            }
        }
    }
    let rows: Vec<SparseVec<F>> = rows.into_values().collect();
    linalg::kernel(&rows, dim * dim)
        .into_iter()
        .map(|v| v.map_keys(|&i| (i / dim, i % dim)))
        .collect()
}

/// Rank of the canonical surjection `ker m → Ω¹_P`, `Σ p ⊗ q ↦ Σ p dq`.
pub fn universal_map_rank<F: RootField>(mc: &MatrixCalculus<'_, F>) -> (usize, usize) {
    let alg = mc.algebra();
    let rank = mc.rank().max(1);
    let basis = universal_calculus_basis::<F>(alg);
    let images: Vec<SparseVec<F>> = basis
        .iter()
        .map(|xi| {
            let mut out = PForm::zero();
            for ((p, q), c) in xi.iter() {
                let t = left_mul_form(alg, &SparseVec::basis(*p), &mc.d(&SparseVec::basis(*q)));
                out.add_scaled(&t, c);
            }
            out.map_keys(|&(u, i)| u * rank + i)
        })
        .collect();
    (basis.len(), linalg::rank(&images))
}

/// One entry of [`classify_m2`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculusReport {
    pub group: String,
    pub subset: Vec<String>,
    pub rank: usize,
    /// Dimension of `P·dP`; equals `rank · dim P` when `ver` is an isomorphism.
    pub forms_dim: usize,
    pub universal_dim: usize,
    /// Rank of `ker m → Ω¹_P`; equal to `universal_dim` exactly for the universal calculus.
    pub universal_image_rank: usize,
    pub description: String,
    pub relations_sample: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner_element: Option<Vec<String>>,
    pub checks: Vec<Check>,
}

/// Builds the report for one subset of a Case 2 bundle.
pub fn calculus_report<F: RootField>(bundle: &Bundle<F>, subset: &[GroupElem]) -> Result<CalculusReport> {
    let mc = matrix_calculus(bundle, subset)?;
    let alg = mc.algebra();
    let group = bundle.group();
    let gc = mc.group_calculus();
    let mut checks = vec![
        gc.check_leibniz::<F>(),
        gc.check_adjoint::<F>(),
        mc.check_leibniz(),
        mc.check_centrality(),
        mc.check_against_vertical()?,
    ];
    let (iso, forms_dim) = mc.check_ver_isomorphism()?;
    checks.push(iso);
    let (universal_dim, universal_image_rank) = if subset.is_empty() {
        (universal_calculus_basis::<F>(alg).len(), 0)
    } else {
        universal_map_rank(&mc)
    };
    let inner = if subset.is_empty() {
        None
    } else {
        mc.inner_element().map(|t| {
            inner_components(&t)
                .iter()
                .map(|v| format_element(alg, v))
                .collect()
        })
    };
    let rank = subset.len();
    let description = if rank == 0 {
        "zero calculus".to_string()
    } else if universal_image_rank == universal_dim {
        format!("{rank}D universal calculus")
    } else {
        format!("{rank}D non-universal calculus")
    };
    let relations_sample = subset
        .iter()
        .take(2)
        .map(|a| {
            let g = group.elements().nth(1).unwrap_or(0);
            format!(
                "e_{}·δ_{} = δ_{}·e_{}",
                group.format_elem(*a),
                group.format_elem(g),
                group.format_elem(group.mul(g, group.inv(*a))),
                group.format_elem(*a)
            )
        })
        .collect();
    Ok(CalculusReport {
        group: group.to_string(),
        subset: subset.iter().map(|a| group.format_elem(*a)).collect(),
        rank,
        forms_dim,
        universal_dim,
        universal_image_rank,
        description,
        relations_sample,
        inner_element: inner,
        checks,
    })
}

/// Reports for every subset of `(Z_2 × Z_2) ∖ {e}` on `M_2`.
pub fn classify_m2<F: RootField>() -> Result<Vec<CalculusReport>> {
    let bundle = crate::bundles::build_case2::<F>(1, 2)?;
    let others: Vec<GroupElem> = bundle.group().elements().filter(|g| *g != 0).collect();
    (0u32..1 << others.len())
        .into_par_iter()
        .map(|mask| {
            let subset: Vec<GroupElem> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, g)| *g)
                .collect();
            calculus_report(&bundle, &subset)
        })
        .collect()
}
