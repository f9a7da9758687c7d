//! The trivialization of `M_n` over `C[Z_n × Z_n]` (Case 2 with `k = 1`).

use crate::error::Result;
use crate::galois::PHTensor;
use crate::hopf::{ConvInverse, GroupElem};
use crate::multimatrix::MultiMatrixElement;
use crate::report::Check;
use crate::scalar::RootField;

use super::{build_case2, root, Bundle};

#[derive(Clone, Debug)]
pub struct Trivialization<F: RootField> {
    pub bundle: Bundle<F>,
    pub beta: Vec<Vec<F>>,
    pub gamma: Vec<Vec<F>>,
    /// `Φ(δ_g)` for each `g`.
    pub phi: Vec<MultiMatrixElement<F>>,
    /// `Ψ(δ_g)` for each `g`.
    pub psi: Vec<MultiMatrixElement<F>>,
    pub checks: Vec<Check>,
    /// `(k, s, Σ_r β_{r,r+k} γ_{s+r+k,s+r} − [s = 0]/n²)`.
    pub residuals: Vec<(usize, usize, F)>,
}

impl<F: RootField> Trivialization<F> {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// `β_{0,k} = γ_{k,0} = 1/n`, all other entries zero.
pub fn trivialization_mn<F: RootField>(n: usize) -> Result<Trivialization<F>> {
    let mut beta = vec![vec![F::zero(); n]; n];
    let mut gamma = vec![vec![F::zero(); n]; n];
    for k in 0..n {
        beta[0][k] = F::from_ratio(1, n as i64);
        gamma[k][0] = F::from_ratio(1, n as i64);
    }
    trivialization_with(n, beta, gamma)
}

/// `Φ(δ_{(s,ω)}) = Σ_{ij} ω^{j−i} β_{i−s,j−s} E_ij` and
/// `Ψ(δ_{(s,ω)}) = Σ_{ij} ω^{i−j} γ_{i+s,j+s} E_ij`, with all checks run.
pub fn trivialization_with<F: RootField>(n: usize, beta: Vec<Vec<F>>, gamma: Vec<Vec<F>>) -> Result<Trivialization<F>> {
    let bundle = build_case2::<F>(1, n)?;
    let alg = bundle.algebra().clone();
    let hopf = bundle.hopf().clone();
    let group = hopf.group().clone();
    let md = |x: i64| x.rem_euclid(n as i64) as usize;
    let table = |f: &dyn Fn(GroupElem, usize, usize) -> F| -> Vec<MultiMatrixElement<F>> {
        group
            .elements()
            .map(|g| {
                let v = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| (alg.index(0, i, j).expect("in range"), f(g, i, j)))
                    .collect();
                MultiMatrixElement::from_sparse(&alg, &v)
            })
            .collect()
    };
    let comps = |g: GroupElem| {
        let c = group.components(g);
        (c[0] as i64, c[1] as i64)
    };
    let phi = table(&|g, i, j| {
        let (s, t) = comps(g);
        root::<F>(n, t * (j as i64 - i as i64)) * beta[md(i as i64 - s)][md(j as i64 - s)].clone()
    });
    let psi = table(&|g, i, j| {
        let (s, t) = comps(g);
        root::<F>(n, t * (i as i64 - j as i64)) * gamma[md(i as i64 + s)][md(j as i64 + s)].clone()
    });

    let mut checks = Vec::new();
    let fmt_g = |g: GroupElem| group.format_elem(g);
    let one = MultiMatrixElement::one(&alg);
    let phi_one = phi
        .iter()
        .fold(MultiMatrixElement::zero(&alg), |acc, x| acc.try_add(x).expect("same algebra"));
    checks.push(Check::from_witness(
        "Φ(1) = 1",
        (phi_one != one).then(|| format!("Φ(1) = {:?}", phi_one.to_json())),
    ));
    let trace: F = (0..n).fold(F::zero(), |acc, i| acc + beta[i][i].clone());
    checks.push(Check::from_witness(
        "Σ_i β_ii = 1/n",
        (trace != F::from_ratio(1, n as i64)).then(|| format!("Σ_i β_ii = {trace}")),
    ));

    let coact = |x: &MultiMatrixElement<F>| bundle.coaction.coact(&x.to_sparse());
    let put = |out: &mut PHTensor<F>, x: &MultiMatrixElement<F>, h: GroupElem| {
        for (u, c) in x.to_sparse().iter() {
            out.add_term((*u, h), c.clone());
        }
    };
    let comodule = group.elements().find_map(|g| {
        let mut rhs = PHTensor::zero();
        for x in group.elements() {
            put(&mut rhs, &phi[x], group.mul(group.inv(x), g));
        }
        (coact(&phi[g]) != rhs).then(|| format!("Δ_R Φ(δ_{}) ≠ (Φ⊗id)Δ δ_{}", fmt_g(g), fmt_g(g)))
    });
    checks.push(Check::from_witness("Φ right-comodule map", comodule));
    let covariance = group.elements().find_map(|g| {
        let mut rhs = PHTensor::zero();
        for x in group.elements() {
            let y = group.mul(group.inv(x), g);
            put(&mut rhs, &psi[y], group.inv(x));
        }
        (coact(&psi[g]) != rhs).then(|| format!("Δ_R Ψ(δ_{}) ≠ Ψ(h_(2))⊗S h_(1)", fmt_g(g)))
    });
    checks.push(Check::from_witness("Ψ covariance", covariance));

    let unit = hopf.unit_map::<_, F>(&one);
    let first_bad = |conv: &[MultiMatrixElement<F>]| {
        group
            .elements()
            .find(|g| conv[*g] != unit[*g])
            .map(|g| format!("differs at δ_{}", fmt_g(g)))
    };
    checks.push(Check::from_witness("Φ⊙Ψ = 1ε", first_bad(&hopf.convolve::<_, F>(&phi, &psi))));
    checks.push(Check::from_witness("Ψ⊙Φ = 1ε", first_bad(&hopf.convolve::<_, F>(&psi, &phi))));
    let solved = match hopf.convolution_inverse::<_, F>(&phi) {
        ConvInverse::Inverse(inv) if inv == psi => None,
        ConvInverse::Inverse(_) => Some("solved inverse differs from Ψ".to_string()),
        ConvInverse::NotInvertible => Some("Φ is not convolution invertible".to_string()),
    };
    checks.push(Check::from_witness("solved Φ^{-1} = Ψ", solved));

    let target = F::from_ratio(1, (n * n) as i64);
    let mut residuals = Vec::with_capacity(n * n);
    for k in 0..n {
        for s in 0..n {
            let sum = (0..n).fold(F::zero(), |acc, r| {
                acc + beta[r][(r + k) % n].clone() * gamma[(s + r + k) % n][(s + r) % n].clone()
            });
            let want = if s == 0 { target.clone() } else { F::zero() };
            residuals.push((k, s, sum - want));
        }
    }
    let bad = residuals
        .iter()
        .find(|(_, _, r)| !r.is_zero())
        .map(|(k, s, r)| format!("k = {k}, s = {s}: residual {r}"));
    checks.push(Check::from_witness("β/γ equations", bad));

    Ok(Trivialization {
        bundle,
        beta,
        gamma,
        phi,
        psi,
        checks,
        residuals,
    })
}
