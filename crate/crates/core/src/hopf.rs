//! The function Hopf algebra `C[G]` of a finite abelian group.
//!
//! Elements are combinations of the delta functions `δ_g`, indexed by the
//! position of `g` in [`FiniteAbelianGroup::elements`]. Maps `H → X` into an
//! algebra are stored as tables over the delta basis, which is all the
//! convolution product needs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, SparseVec};
use crate::linalg;
use crate::multimatrix::MultiMatrixElement;
use crate::scalar::Field;

/// `Z_{c_1} × … × Z_{c_r}`, elements enumerated in mixed radix with the last
/// factor varying fastest.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

/// Index of a group element.
pub type GroupElem = usize;

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup(format!("{factors:?}")));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&c| c as usize).product()
    }

    pub fn identity(&self) -> GroupElem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        0..self.order()
    }

    /// Component tuple of an element.
    pub fn components(&self, g: GroupElem) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        let mut rest = g;
        for (slot, &c) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (rest % c as usize) as u32;
            rest /= c as usize;
        }
        out
    }

    /// Element from components, each reduced modulo its factor.
    pub fn from_components(&self, comps: &[i64]) -> Result<GroupElem> {
        if comps.len() != self.factors.len() {
            return Err(Error::InvalidGroup(format!(
                "element {comps:?} has {} components, group {} has {}",
                comps.len(),
                self,
                self.factors.len()
            )));
        }
        Ok(comps
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &c)| {
                acc * c as usize + x.rem_euclid(c as i64) as usize
            }))
    }

    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        let ca = self.components(a);
        let cb = self.components(b);
        let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| (*x + *y) as i64).collect();
        self.from_components(&sum).expect("same arity")
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        let neg: Vec<i64> = self.components(a).iter().map(|&x| -(x as i64)).collect();
        self.from_components(&neg).expect("same arity")
    }

    /// Least common multiple of the factors; every element order divides it.
    pub fn exponent(&self) -> u32 {
        use num_integer::Integer;
        self.factors.iter().fold(1u32, |acc, &c| acc.lcm(&c))
    }

    /// `(c_1, …)` tuple notation, e.g. `(1,0)`.
    pub fn format_elem(&self, g: GroupElem) -> String {
        let c: Vec<String> = self.components(g).iter().map(u32::to_string).collect();
        format!("({})", c.join(","))
    }

    /// Parses `(a,b,…)` or a bare integer for cyclic groups.
    pub fn parse_elem(&self, s: &str) -> Result<GroupElem> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let comps = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidGroup(format!("bad element {s:?}")))?;
        self.from_components(&comps)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|c| format!("Z{c}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// `Z3xZ3`, `Z4`, …
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(s.to_string());
        let factors = s
            .split(['x', '×'])
            .map(|p| {
                p.trim()
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<u32>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }
}

pub type HopfElement<F> = SparseVec<F>;
pub type HopfTensor2<F> = LinComb<(GroupElem, GroupElem), F>;
pub type HopfTensor3<F> = LinComb<(GroupElem, GroupElem, GroupElem), F>;

/// `C[G]` with its delta basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FnHopfAlgebra {
    group: FiniteAbelianGroup,
}

impl FnHopfAlgebra {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        FnHopfAlgebra { group }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn delta<F: Field>(&self, g: GroupElem) -> HopfElement<F> {
        SparseVec::basis(g)
    }

    /// `1 = Σ_x δ_x`.
    pub fn one<F: Field>(&self) -> HopfElement<F> {
        self.group.elements().map(|g| (g, F::one())).collect()
    }

    /// Pointwise product: `δ_x δ_y = δ_{x,y} δ_x`.
    pub fn product<F: Field>(&self, a: &HopfElement<F>, b: &HopfElement<F>) -> HopfElement<F> {
        a.iter()
            .map(|(g, c)| (*g, c.clone() * b.get(g)))
            .collect()
    }

    /// `Δδ_g = Σ_{xy=g} δ_x ⊗ δ_y`.
    pub fn coproduct<F: Field>(&self, a: &HopfElement<F>) -> HopfTensor2<F> {
        a.map_linear(|&g| {
            self.group
                .elements()
                .map(|x| ((x, self.group.mul(self.group.inv(x), g)), F::one()))
                .collect()
        })
    }

    /// `(Δ ⊗ id)Δ`, the three-leg Sweedler expansion `h_(1) ⊗ h_(2) ⊗ h_(3)`.
    pub fn coproduct2<F: Field>(&self, a: &HopfElement<F>) -> HopfTensor3<F> {
        self.coproduct(a).map_linear(|&(x, y)| {
            self.coproduct(&self.delta::<F>(x))
                .map_keys(|&(x1, x2)| (x1, x2, y))
        })
    }

    /// `ε(δ_x) = δ_{x,e}`.
    pub fn counit<F: Field>(&self, a: &HopfElement<F>) -> F {
        a.get(&self.group.identity())
    }

    /// `S(δ_x) = δ_{x^{-1}}`.
    pub fn antipode<F: Field>(&self, a: &HopfElement<F>) -> HopfElement<F> {
        a.map_keys(|&g| self.group.inv(g))
    }

    /// `S^{-1}`; equal to `S` because `S² = id` on `C[G]`.
    pub fn antipode_inverse<F: Field>(&self, a: &HopfElement<F>) -> HopfElement<F> {
        self.antipode(a)
    }

    /// Normalized integral `∫f = |G|^{-1} Σ_g f(g)`.
    pub fn integral<F: Field>(&self, a: &HopfElement<F>) -> F {
        let total = a.iter().fold(F::zero(), |acc, (_, c)| acc + c.clone());
        total / F::from_int(self.dim() as i64)
    }

    /// `h ↦ ε(h)·1`, the unit of the convolution algebra, with values in `X`.
    pub fn unit_map<X: ConvolutionTarget<F>, F: Field>(&self, one: &X) -> Vec<X> {
        self.group
            .elements()
            .map(|g| {
                if g == self.group.identity() {
                    one.one_like()
                } else {
                    one.zero_like()
                }
            })
            .collect()
    }

    /// `(Φ ⊙ Ψ)(δ_g) = Σ_{xy=g} Φ(δ_x) Ψ(δ_y)`.
    pub fn convolve<X: ConvolutionTarget<F>, F: Field>(&self, phi: &[X], psi: &[X]) -> Vec<X> {
        self.group
            .elements()
            .map(|g| {
                self.group.elements().fold(phi[0].zero_like(), |acc, x| {
                    let y = self.group.mul(self.group.inv(x), g);
                    acc.add(&phi[x].mul(&psi[y]))
                })
            })
            .collect()
    }

    /// Solves `Φ ⊙ Ψ = 1ε` exactly and checks the other side.
    pub fn convolution_inverse<X: ConvolutionTarget<F>, F: Field>(&self, phi: &[X]) -> ConvInverse<X> {
        let d = phi[0].dim();
        let order = self.dim();
        let basis: Vec<X> = (0..d)
            .map(|i| {
                let mut c = vec![F::zero(); d];
                c[i] = F::one();
                phi[0].with_coords(&c)
            })
            .collect();
        let one = phi[0].one_like().coords();
        let mut rows = Vec::with_capacity(order * d);
        let mut rhs = Vec::with_capacity(order * d);
        for g in self.group.elements() {
            // products Φ(δ_{g y^{-1}}) e_j, as coordinate columns
            let cols: Vec<Vec<F>> = self
                .group
                .elements()
                .flat_map(|y| {
                    let x = self.group.mul(g, self.group.inv(y));
                    basis.iter().map(move |e| phi[x].mul(e).coords())
                })
                .collect();
            for c in 0..d {
                rows.push(
                    cols.iter()
                        .enumerate()
                        .map(|(col, v)| (col, v[c].clone()))
                        .collect(),
                );
                rhs.push(if g == self.group.identity() {
                    one[c].clone()
                } else {
                    F::zero()
                });
            }
        }
        let Some(sol) = linalg::solve_linear(&rows, &rhs, order * d) else {
            return ConvInverse::NotInvertible;
        };
        let psi: Vec<X> = sol.chunks(d).map(|c| phi[0].with_coords(c)).collect();
        let unit = self.unit_map(&phi[0]);
        if self.convolve(&psi, phi) != unit || self.convolve(phi, &psi) != unit {
            return ConvInverse::NotInvertible;
        }
        ConvInverse::Inverse(psi)
    }
}

/// Result of [`FnHopfAlgebra::convolution_inverse`].
#[derive(Clone, Debug, PartialEq)]
pub enum ConvInverse<X> {
    Inverse(Vec<X>),
    NotInvertible,
}

/// A finite-dimensional unital algebra receiving maps out of `C[G]`.
pub trait ConvolutionTarget<F: Field>: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &F) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn dim(&self) -> usize;
    fn coords(&self) -> Vec<F>;
    fn with_coords(&self, coords: &[F]) -> Self;
}

impl<F: Field> ConvolutionTarget<F> for F {
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn scale(&self, c: &F) -> Self {
        self.clone() * c.clone()
    }
    fn zero_like(&self) -> Self {
        F::zero()
    }
    fn one_like(&self) -> Self {
        F::one()
    }
    fn dim(&self) -> usize {
        1
    }
    fn coords(&self) -> Vec<F> {
        vec![self.clone()]
    }
    fn with_coords(&self, coords: &[F]) -> Self {
        coords[0].clone()
    }
}

impl<F: Field> ConvolutionTarget<F> for MultiMatrixElement<F> {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same algebra")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same algebra")
    }
    fn scale(&self, c: &F) -> Self {
        MultiMatrixElement::scale(self, c)
    }
    fn zero_like(&self) -> Self {
        MultiMatrixElement::zero(self.algebra())
    }
    fn one_like(&self) -> Self {
        MultiMatrixElement::one(self.algebra())
    }
    fn dim(&self) -> usize {
        self.algebra().dim()
    }
    fn coords(&self) -> Vec<F> {
        let v = self.to_sparse();
        (0..self.algebra().dim()).map(|u| v.get(&u)).collect()
    }
    fn with_coords(&self, coords: &[F]) -> Self {
        let v: SparseVec<F> = coords.iter().cloned().enumerate().collect();
        MultiMatrixElement::from_sparse(self.algebra(), &v)
    }
}
