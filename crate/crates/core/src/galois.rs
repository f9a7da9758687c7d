//! Coactions of `C[G]` on multi-matrix algebras, coinvariants, the relative
//! tensor product `P ⊗_A P`, the canonical map and the Hopf-Galois verdict.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{FiniteAbelianGroup, FnHopfAlgebra, GroupElem};
use crate::linalg::{self, Echelon, TrackedEchelon};
use crate::lincomb::{LinComb, SparseVec};
use crate::multimatrix::MultiMatrixAlgebra;
use crate::report::{tensor_to_terms, TableEntry};
use crate::scalar::Field;

pub mod explicit;

/// Element of `P ⊗ P`, keyed by pairs of basis units.
pub type PTensor<F> = LinComb<(usize, usize), F>;
/// Element of `P ⊗ H`, keyed by (basis unit, group element).
pub type PHTensor<F> = LinComb<(usize, GroupElem), F>;

/// A right coaction `Δ_R(p) = Σ_g (g ▷ p) ⊗ δ_g` induced by a group action.
#[derive(Clone, Debug)]
pub struct Coaction<F: Field> {
    algebra: MultiMatrixAlgebra,
    hopf: FnHopfAlgebra,
    /// `action[g][u] = g ▷ E_u`.
    action: Vec<Vec<SparseVec<F>>>,
}

/// Validates an action table and wraps it as a coaction.
///
/// Rejects tables where the identity does not act trivially, some `g` is not
/// a unital algebra map, or the table is not a homomorphism.
pub fn coaction_from_action<F: Field>(
    algebra: &MultiMatrixAlgebra,
    hopf: &FnHopfAlgebra,
    action: Vec<Vec<SparseVec<F>>>,
) -> Result<Coaction<F>> {
    let group = hopf.group();
    let dim = algebra.dim();
    if action.len() != group.order() || action.iter().any(|t| t.len() != dim) {
        return Err(Error::InvalidAction {
            axiom: "complete table".into(),
            witness: format!("expected {} x {} entries", group.order(), dim),
        });
    }
    let c = Coaction {
        algebra: algebra.clone(),
        hopf: hopf.clone(),
        action,
    };
    let fail = |axiom: &str, witness: String| Error::InvalidAction {
        axiom: axiom.into(),
        witness,
    };
    for u in 0..dim {
        if c.action[group.identity()][u] != SparseVec::basis(u) {
            return Err(fail("identity acts trivially", format!("{:?}", algebra.unit(u))));
        }
    }
    let one = algebra.one::<F>();
    for g in group.elements() {
        if c.act(g, &one) != one {
            return Err(fail("unital", format!("g = {}", group.format_elem(g))));
        }
        for a in 0..dim {
            for b in 0..dim {
                let lhs = match algebra.mul_units(a, b) {
                    Some(ab) => c.action[g][ab].clone(),
                    None => SparseVec::zero(),
                };
                let rhs = algebra.mul(&c.action[g][a], &c.action[g][b]);
                if lhs != rhs {
                    return Err(fail(
                        "algebra map",
                        format!(
                            "g = {}, units {:?} {:?}",
                            group.format_elem(g),
                            algebra.unit(a),
                            algebra.unit(b)
                        ),
                    ));
                }
            }
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for u in 0..dim {
                if c.act(g, &c.action[h][u]) != c.action[gh][u] {
                    return Err(fail(
                        "homomorphism",
                        format!(
                            "g = {}, h = {}, unit {:?}",
                            group.format_elem(g),
                            group.format_elem(h),
                            algebra.unit(u)
                        ),
                    ));
                }
            }
        }
    }
    Ok(c)
}

impl<F: Field> Coaction<F> {
    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &FnHopfAlgebra {
        &self.hopf
    }

    /// `g ▷ v`.
    pub fn act(&self, g: GroupElem, v: &SparseVec<F>) -> SparseVec<F> {
        v.map_linear(|u| self.action[g][*u].clone())
    }

    /// `Δ_R(v) = Σ_g (g ▷ v) ⊗ δ_g`.
    pub fn coact(&self, v: &SparseVec<F>) -> PHTensor<F> {
        let mut out = PHTensor::zero();
        for g in self.hopf.group().elements() {
            for (u, c) in self.act(g, v).iter() {
                out.add_term((*u, g), c.clone());
            }
        }
        out
    }

    /// Product in `P ⊗ H`.
    pub fn mul_ph(&self, a: &PHTensor<F>, b: &PHTensor<F>) -> PHTensor<F> {
        let mut out = PHTensor::zero();
        for ((p, g), x) in a.iter() {
            for ((q, h), y) in b.iter() {
                if g != h {
                    continue;
                }
                if let Some(r) = self.algebra.mul_units(*p, *q) {
                    out.add_term((r, *g), x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// Checks the comodule-algebra axioms on the basis: `Δ_R` multiplicative
    /// and unital, coassociative, counital.
    pub fn verify_comodule_algebra(&self) -> Result<()> {
        let dim = self.algebra.dim();
        let group = self.hopf.group();
        let fail = |axiom: &str, witness: String| Error::InvalidAction {
            axiom: axiom.into(),
            witness,
        };
        let one = self.algebra.one::<F>();
        let one_one: PHTensor<F> = one
            .iter()
            .flat_map(|(u, c)| group.elements().map(move |g| ((*u, g), c.clone())))
            .collect();
        if self.coact(&one) != one_one {
            return Err(fail("Δ_R(1) = 1⊗1", String::new()));
        }
        let coacts: Vec<PHTensor<F>> = (0..dim).map(|u| self.coact(&SparseVec::basis(u))).collect();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = match self.algebra.mul_units(a, b) {
                    Some(ab) => coacts[ab].clone(),
                    None => PHTensor::zero(),
                };
                if lhs != self.mul_ph(&coacts[a], &coacts[b]) {
                    return Err(fail(
                        "Δ_R multiplicative",
                        format!("{:?} {:?}", self.algebra.unit(a), self.algebra.unit(b)),
                    ));
                }
            }
        }
        for u in 0..dim {
            // (Δ_R ⊗ id)Δ_R = (id ⊗ Δ)Δ_R
            let mut lhs: LinComb<(usize, GroupElem, GroupElem), F> = LinComb::zero();
            for ((p, g), c) in coacts[u].iter() {
                for ((q, h), d) in coacts[*p].iter() {
                    lhs.add_term((*q, *h, *g), c.clone() * d.clone());
                }
            }
            let mut rhs = LinComb::zero();
            for ((p, g), c) in coacts[u].iter() {
                for ((x, y), d) in self.hopf.coproduct(&self.hopf.delta::<F>(*g)).iter() {
                    rhs.add_term((*p, *x, *y), c.clone() * d.clone());
                }
            }
            if lhs != rhs {
                return Err(fail("coassociative", format!("{:?}", self.algebra.unit(u))));
            }
            let counit: SparseVec<F> = coacts[u]
                .iter()
                .filter(|((_, g), _)| *g == group.identity())
                .map(|((p, _), c)| (*p, c.clone()))
                .collect();
            if counit != SparseVec::basis(u) {
                return Err(fail("counital", format!("{:?}", self.algebra.unit(u))));
            }
        }
        Ok(())
    }

    /// Basis of `A = P^{co H}`, the kernel of `p ↦ Δ_R(p) − p ⊗ 1`.
    pub fn coinvariants(&self) -> Result<Vec<SparseVec<F>>> {
        let dim = self.algebra.dim();
        let mut rows: BTreeMap<(GroupElem, usize), SparseVec<F>> = BTreeMap::new();
        for g in self.hopf.group().elements() {
            for u in 0..dim {
                let mut col = self.action[g][u].clone();
                col.add_term(u, -F::one());
                for (w, c) in col.iter() {
                    rows.entry((g, *w)).or_default().add_term(u, c.clone());
                }
            }
        }
        let rows: Vec<SparseVec<F>> = rows.into_values().collect();
        let basis = linalg::kernel(&rows, dim);
        check_unital_subalgebra(&self.algebra, &basis)?;
        Ok(basis)
    }

    /// `ver♯(p ⊗ q) = p q_[0] ⊗ q_[1]`, extended linearly.
    pub fn canonical(&self, t: &PTensor<F>) -> PHTensor<F> {
        let mut out = PHTensor::zero();
        for ((p, q), c) in t.iter() {
            for g in self.hopf.group().elements() {
                for (w, d) in self.action[g][*q].iter() {
                    if let Some(r) = self.algebra.mul_units(*p, *w) {
                        out.add_term((r, g), c.clone() * d.clone());
                    }
                }
            }
        }
        out
    }
}

/// Fails unless `basis` spans a subalgebra containing 1.
pub fn check_unital_subalgebra<F: Field>(algebra: &MultiMatrixAlgebra, basis: &[SparseVec<F>]) -> Result<()> {
    let span = Echelon::from_rows(basis);
    if !span.contains(&algebra.one()) {
        return Err(Error::Structural("subspace does not contain 1".into()));
    }
    for a in basis {
        for b in basis {
            if !span.contains(&algebra.mul(a, b)) {
                return Err(Error::Structural("subspace not closed under products".into()));
            }
        }
    }
    Ok(())
}

/// `P ⊗_A P` as the quotient of `P ⊗ P` by `span{pa ⊗ q − p ⊗ aq}`.
///
/// The quotient basis is the set of basis tensors `E_u ⊗ E_v` whose flat
/// index `u·dim + v` is not a pivot of the relation span.
#[derive(Clone, Debug)]
pub struct RelativeTensor<F: Field> {
    algebra: MultiMatrixAlgebra,
    a_basis: Vec<SparseVec<F>>,
    relations: Echelon<F>,
    basis: Vec<(usize, usize)>,
}

pub fn relative_tensor<F: Field>(algebra: &MultiMatrixAlgebra, a_basis: &[SparseVec<F>]) -> Result<RelativeTensor<F>> {
    check_unital_subalgebra(algebra, a_basis)?;
    let dim = algebra.dim();
    let mut relations = Echelon::new();
    for p in 0..dim {
        let pv = SparseVec::basis(p);
        for a in a_basis {
            let pa = algebra.mul(&pv, a);
            for q in 0..dim {
                let qv = SparseVec::basis(q);
                let aq = algebra.mul(a, &qv);
                let mut rel = SparseVec::zero();
                for (x, c) in pa.iter() {
                    rel.add_term(x * dim + q, c.clone());
                }
                for (y, c) in aq.iter() {
                    rel.add_term(p * dim + y, -c.clone());
                }
                if !rel.is_zero() {
                    relations.insert(rel);
                }
            }
        }
    }
    let basis = (0..dim * dim)
        .filter(|i| !relations.is_pivot(*i))
        .map(|i| (i / dim, i % dim))
        .collect();
    Ok(RelativeTensor {
        algebra: algebra.clone(),
        a_basis: a_basis.to_vec(),
        relations,
        basis,
    })
}

impl<F: Field> RelativeTensor<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn relations_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Quotient basis, as pairs of units.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn a_basis(&self) -> &[SparseVec<F>] {
        &self.a_basis
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    fn flatten(&self, t: &PTensor<F>) -> SparseVec<F> {
        let dim = self.algebra.dim();
        t.map_keys(|(p, q)| p * dim + q)
    }

    fn unflatten(&self, v: &SparseVec<F>) -> PTensor<F> {
        let dim = self.algebra.dim();
        v.map_keys(|i| (i / dim, i % dim))
    }

    /// Canonical representative of `t` in `P ⊗_A P`, supported on the quotient basis.
    pub fn project(&self, t: &PTensor<F>) -> PTensor<F> {
        self.unflatten(&self.relations.reduce(&self.flatten(t)))
    }

    /// Whether `t` is zero in `P ⊗_A P`.
    pub fn is_relation(&self, t: &PTensor<F>) -> bool {
        self.relations.contains(&self.flatten(t))
    }

    /// The echelon rows spanning the relations, as tensors.
    pub fn relation_rows(&self) -> Vec<PTensor<F>> {
        self.relations.rows().map(|r| self.unflatten(r)).collect()
    }
}

/// The canonical map restricted to the quotient basis of `P ⊗_A P`.
#[derive(Clone, Debug)]
pub struct CanonicalMap<F: Field> {
    /// `columns[i] = ver♯(basis[i])`.
    pub columns: Vec<PHTensor<F>>,
}

/// Builds the canonical map on `rt`, after checking it kills every relation.
pub fn canonical_map<F: Field>(c: &Coaction<F>, rt: &RelativeTensor<F>) -> Result<CanonicalMap<F>> {
    for row in rt.relation_rows() {
        let img = c.canonical(&row);
        if !img.is_zero() {
            return Err(Error::Structural(format!(
                "canonical map does not vanish on a relation of P⊗_A P (image {} terms)",
                img.len()
            )));
        }
    }
    Ok(CanonicalMap {
        columns: rt
            .basis()
            .iter()
            .map(|&(p, q)| c.canonical(&PTensor::basis((p, q))))
            .collect(),
    })
}

/// Outcome of the bijectivity test for the canonical map.
#[derive(Clone, Debug)]
pub struct GaloisVerdict<F: Field> {
    /// `dim P ⊗_A P`.
    pub dim_relative: usize,
    /// `dim P ⊗ H` (or the candidate it is compared with).
    pub dim_target: usize,
    pub rank: Option<usize>,
    pub is_hopf_galois: bool,
    pub obstruction: Option<String>,
    /// For a positive verdict: a preimage of `1 ⊗ δ_h` for every `h`.
    pub preimages: Option<Vec<(GroupElem, PTensor<F>)>>,
}

/// Serializable form of a [`GaloisVerdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub case: Option<String>,
    pub dims: (usize, usize),
    pub rank: Option<usize>,
    pub is_hopf_galois: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preimage_table: Option<Vec<TableEntry>>,
}

impl<F: Field> GaloisVerdict<F> {
    pub fn record(&self, case: Option<String>, algebra: &MultiMatrixAlgebra, group: &FiniteAbelianGroup) -> VerdictRecord {
        VerdictRecord {
            case,
            dims: (self.dim_relative, self.dim_target),
            rank: self.rank,
            is_hopf_galois: self.is_hopf_galois,
            obstruction: self.obstruction.clone(),
            preimage_table: self.preimages.as_ref().map(|rows| {
                rows.iter()
                    .map(|(g, t)| TableEntry {
                        element: group.format_elem(*g),
                        terms: tensor_to_terms(algebra, t),
                    })
                    .collect()
            }),
        }
    }
}

pub fn galois_verdict<F: Field>(c: &Coaction<F>) -> Result<GaloisVerdict<F>> {
    let a = c.coinvariants()?;
    let rt = relative_tensor(c.algebra(), &a)?;
    galois_verdict_with(c, &rt)
}

/// Verdict for a coaction whose relative tensor product is already built.
pub fn galois_verdict_with<F: Field>(c: &Coaction<F>, rt: &RelativeTensor<F>) -> Result<GaloisVerdict<F>> {
    let can = canonical_map(c, rt)?;
    let order = c.hopf().dim();
    let dim_p = c.algebra().dim();
    let dim_target = dim_p * order;
    let flat = |t: &PHTensor<F>| -> SparseVec<F> { t.map_keys(|(u, g)| u * order + g) };
    let mut span = TrackedEchelon::new();
    for (i, col) in can.columns.iter().enumerate() {
        span.insert(flat(col), i);
    }
    let rank = span.rank();
    let dim_relative = rt.dim();
    let bijective = dim_relative == dim_target && rank == dim_target;
    let obstruction = if bijective {
        None
    } else if !dim_relative.is_multiple_of(dim_p) {
        Some(format!("{dim_relative} not divisible by {dim_p}"))
    } else if dim_relative != dim_target {
        Some(format!(
            "dim P⊗_A P = {dim_relative} differs from dim P⊗H = {dim_target}"
        ))
    } else {
        Some(format!("canonical map has rank {rank} < {dim_target}"))
    };
    let preimages = if bijective {
        let one = c.algebra().one::<F>();
        let mut table = Vec::with_capacity(order);
        for h in c.hopf().group().elements() {
            let target: PHTensor<F> = one.iter().map(|(u, x)| ((*u, h), x.clone())).collect();
            let coeffs = span
                .solve(&flat(&target))
                .ok_or_else(|| Error::Structural("bijective canonical map missed 1⊗δ_h".into()))?;
            let pre: PTensor<F> = coeffs
                .iter()
                .map(|(i, x)| (rt.basis()[*i], x.clone()))
                .collect();
            table.push((h, pre));
        }
        Some(table)
    } else {
        None
    };
    Ok(GaloisVerdict {
        dim_relative,
        dim_target,
        rank: Some(rank),
        is_hopf_galois: bijective,
        obstruction,
        preimages,
    })
}

/// Verdict for a bare unital subalgebra `A ⊂ P` without a coaction.
///
/// A Hopf-Galois structure with coinvariants `A` would force
/// `dim P ⊗_A P = dim P · dim H`. When `hopf_dim` is not given the comparison
/// uses the least multiple of `dim P` that is at least `dim P ⊗_A P`.
pub fn subalgebra_verdict<F: Field>(
    algebra: &MultiMatrixAlgebra,
    a_basis: &[SparseVec<F>],
    hopf_dim: Option<usize>,
) -> Result<GaloisVerdict<F>> {
    let rt = relative_tensor(algebra, a_basis)?;
    let dim_p = algebra.dim();
    let d = rt.dim();
    let dim_target = match hopf_dim {
        Some(h) => dim_p * h,
        None => d.div_ceil(dim_p) * dim_p,
    };
    let obstruction = if d % dim_p != 0 {
        Some(format!("{d} not divisible by {dim_p}"))
    } else if d != dim_target {
        Some(format!("dim P⊗_A P = {d} differs from dim P⊗H = {dim_target}"))
    } else {
        None
    };
    Ok(GaloisVerdict {
        dim_relative: d,
        dim_target,
        rank: None,
        // Without a coaction only the necessary condition can be checked.
        is_hopf_galois: false,
        obstruction: obstruction.or_else(|| Some("no coaction supplied".into())),
        preimages: None,
    })
}

/// Checks `ver♯(p·x) = (p ⊗ 1)·ver♯(x)` for basis `p` and basis tensors `x`.
pub fn verify_left_module_map<F: Field>(c: &Coaction<F>) -> Result<()> {
    let dim = c.algebra().dim();
    for p in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let x = PTensor::basis((a, b));
                let lhs = match c.algebra().mul_units(p, a) {
                    Some(pa) => c.canonical(&PTensor::basis((pa, b))),
                    None => PHTensor::zero(),
                };
                let rhs: PHTensor<F> = c
                    .canonical(&x)
                    .iter()
                    .filter_map(|((u, g), v)| c.algebra().mul_units(p, *u).map(|w| ((w, *g), v.clone())))
                    .collect();
                if lhs != rhs {
                    return Err(Error::Structural(format!(
                        "canonical map not left linear at p = {:?}",
                        c.algebra().unit(p)
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycNum;
    use crate::hopf::FiniteAbelianGroup;
    use crate::multimatrix::{embed_case1, BlockPartition};
    use crate::scalar::RootField;

    type C = CycNum;

    fn trivial_coaction(alg: &MultiMatrixAlgebra, n: u32) -> Coaction<C> {
        let h = FnHopfAlgebra::new(FiniteAbelianGroup::cyclic(n).unwrap());
        let table = (0..n).map(|_| (0..alg.dim()).map(SparseVec::basis).collect()).collect();
        coaction_from_action(alg, &h, table).unwrap()
    }

    /// Case 1 action written out directly: `ω ▷ E_ij = ω^{(i)−(j)} E_ij`.
    fn diagonal_coaction(lengths: Vec<usize>) -> Coaction<C> {
        let part = BlockPartition::new(lengths).unwrap();
        let n = part.n() as u32;
        let alg = MultiMatrixAlgebra::full(part.m()).unwrap();
        let h = FnHopfAlgebra::new(FiniteAbelianGroup::cyclic(n).unwrap());
        let table = (0..n as i64)
            .map(|t| {
                alg.units()
                    .enumerate()
                    .map(|(u, e)| {
                        let s = part.block_of(e.row) as i64 - part.block_of(e.col) as i64;
                        SparseVec::term(u, <C as RootField>::root_of_unity(n, t * s))
                    })
                    .collect()
            })
            .collect();
        coaction_from_action(&alg, &h, table).unwrap()
    }

    #[test]
    fn trivial_coaction_has_all_invariants() {
        let m1 = MultiMatrixAlgebra::full(1).unwrap();
        let c = trivial_coaction(&m1, 2);
        let one = m1.one::<C>();
        let expected: PHTensor<C> = [((0, 0), C::from_int(1)), ((0, 1), C::from_int(1))].into_iter().collect();
        assert_eq!(c.coact(&one), expected);
        let m2 = MultiMatrixAlgebra::full(2).unwrap();
        assert_eq!(trivial_coaction(&m2, 3).coinvariants().unwrap().len(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        let m2 = MultiMatrixAlgebra::full(2).unwrap();
        let h = FnHopfAlgebra::new(FiniteAbelianGroup::cyclic(2).unwrap());
        // g scales E_00 by 2: not an algebra map.
        let mut g1: Vec<SparseVec<C>> = (0..4).map(SparseVec::basis).collect();
        g1[0] = SparseVec::term(0, C::from_int(2));
        let table = vec![(0..4).map(SparseVec::basis).collect(), g1];
        let err = coaction_from_action(&m2, &h, table).unwrap_err();
        assert!(matches!(err, Error::InvalidAction { .. }), "{err}");

        // Conjugation by diag(1, i) is an automorphism but has order 4, not 2.
        let i = <C as RootField>::root_of_unity(4, 1);
        let g1: Vec<SparseVec<C>> = vec![
            SparseVec::basis(0),
            SparseVec::term(1, -i.clone()),
            SparseVec::term(2, i),
            SparseVec::basis(3),
        ];
        let table = vec![(0..4).map(SparseVec::basis).collect(), g1];
        match coaction_from_action(&m2, &h, table).unwrap_err() {
            Error::InvalidAction { axiom, .. } => assert_eq!(axiom, "homomorphism"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn case1_coinvariants_are_block_diagonal() {
        let c = diagonal_coaction(vec![2, 1]);
        c.verify_comodule_algebra().unwrap();
        let a = c.coinvariants().unwrap();
        assert_eq!(a.len(), 5);
        let emb = embed_case1::<C>(&BlockPartition::new(vec![2, 1]).unwrap());
        let declared = Echelon::from_rows(emb.image_basis());
        assert!(a.iter().all(|v| declared.contains(v)));
    }

    #[test]
    fn full_tensor_over_whole_algebra() {
        let m2 = MultiMatrixAlgebra::full(2).unwrap();
        let basis: Vec<SparseVec<C>> = (0..4).map(SparseVec::basis).collect();
        assert_eq!(relative_tensor(&m2, &basis).unwrap().dim(), 4);
    }

    #[test]
    fn projection_respects_relations() {
        let c = diagonal_coaction(vec![2, 1]);
        let a = c.coinvariants().unwrap();
        let rt = relative_tensor(c.algebra(), &a).unwrap();
        assert_eq!(rt.dim(), 18);
        let dim = c.algebra().dim();
        for p in 0..dim {
            for q in 0..dim {
                for av in &a {
                    let pa = c.algebra().mul(&SparseVec::basis(p), av);
                    let aq = c.algebra().mul(av, &SparseVec::basis(q));
                    let l: PTensor<C> = pa.iter().map(|(x, k)| ((*x, q), k.clone())).collect();
                    let r: PTensor<C> = aq.iter().map(|(y, k)| ((p, *y), k.clone())).collect();
                    assert_eq!(rt.project(&l), rt.project(&r));
                }
            }
        }
    }

    #[test]
    fn canonical_map_examples() {
        let c = diagonal_coaction(vec![1, 1]);
        let alg = c.algebra().clone();
        let one = alg.one::<C>();
        let one_one: PTensor<C> = crate::lincomb::tensor(&one, &one);
        let expected: PHTensor<C> = one
            .iter()
            .flat_map(|(u, x)| (0..2).map(move |g| ((*u, g), x.clone())))
            .collect();
        assert_eq!(c.canonical(&one_one), expected);
        verify_left_module_map(&c).unwrap();

        let v = galois_verdict(&c).unwrap();
        assert!(v.is_hopf_galois);
        assert_eq!((v.dim_relative, v.dim_target, v.rank), (8, 8, Some(8)));
        for (h, pre) in v.preimages.unwrap() {
            let img = c.canonical(&pre);
            let target: PHTensor<C> = one.iter().map(|(u, x)| ((*u, h), x.clone())).collect();
            assert_eq!(img, target);
        }
    }

    #[test]
    fn non_galois_subalgebra_counterexample() {
        // M1 ⊕ M1 ⊂ M1 ⊕ M2, (a) ⊕ (b) ↦ (a) ⊕ diag(a, b)
        let p = MultiMatrixAlgebra::new(vec![1, 2]).unwrap();
        let a_img: SparseVec<C> = [(0, C::from_int(1)), (1, C::from_int(1))].into_iter().collect();
        let b_img: SparseVec<C> = SparseVec::basis(4);
        let v = subalgebra_verdict(&p, &[a_img, b_img], None).unwrap();
        assert_eq!(v.dim_relative, 13);
        assert_eq!(v.dim_target, 15);
        assert!(!v.is_hopf_galois);
        assert_eq!(v.obstruction.as_deref(), Some("13 not divisible by 5"));
    }
}
