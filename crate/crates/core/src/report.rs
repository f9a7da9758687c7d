//! Pass/fail records shared by the verification routines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lincomb::{LinComb, SparseVec};
use crate::multimatrix::MultiMatrixAlgebra;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// `E_{i,j}` in a single-block algebra, `E^{(b)}_{i,j}` otherwise.
pub fn format_unit(algebra: &MultiMatrixAlgebra, u: usize) -> String {
    let e = algebra.unit(u);
    if algebra.num_blocks() == 1 {
        format!("E_{{{},{}}}", e.row, e.col)
    } else {
        format!("E^({})_{{{},{}}}", e.block, e.row, e.col)
    }
}

/// Compact text for a scalar: plain rationals lose the `cyc(1)[…]` wrapper.
pub fn format_scalar<F: Field>(c: &F) -> String {
    let s = c.to_string();
    match s.strip_prefix("cyc(1)[").and_then(|r| r.strip_suffix(']')) {
        Some(inner) if !inner.contains(',') => inner.to_string(),
        _ => s,
    }
}

/// `E_{0,0} - E_{1,1}` style rendering of an element.
pub fn format_element<F: Field>(algebra: &MultiMatrixAlgebra, v: &SparseVec<F>) -> String {
    let mut out = String::new();
    for (i, (u, c)) in v.iter().enumerate() {
        let unit = format_unit(algebra, *u);
        let (neg, body) = if *c == F::one() {
            (false, unit)
        } else if *c == -F::one() {
            (true, unit)
        } else {
            let s = format_scalar(c);
            match s.strip_prefix('-') {
                Some(abs) if !abs.contains(['[', '/', '+']) => (true, format!("{abs}{unit}")),
                _ => (false, format!("({s}){unit}")),
            }
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One term `c · E_p ⊗ E_q`; units are `[block, row, col]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub p: [usize; 3],
    pub q: [usize; 3],
    pub c: String,
}

/// A table row `h ↦ Σ c · E_p ⊗ E_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub element: String,
    pub terms: Vec<TensorTerm>,
}

pub fn tensor_to_terms<F: Field>(algebra: &MultiMatrixAlgebra, t: &LinComb<(usize, usize), F>) -> Vec<TensorTerm> {
    let unit = |u: usize| {
        let e = algebra.unit(u);
        [e.block, e.row, e.col]
    };
    t.iter()
        .map(|((p, q), c)| TensorTerm {
            p: unit(*p),
            q: unit(*q),
            c: c.to_string(),
        })
        .collect()
}

pub fn terms_to_tensor<F: Field>(algebra: &MultiMatrixAlgebra, terms: &[TensorTerm]) -> Result<LinComb<(usize, usize), F>> {
    let mut out = LinComb::zero();
    for t in terms {
        let p = algebra.index(t.p[0], t.p[1], t.p[2])?;
        let q = algebra.index(t.q[0], t.q[1], t.q[2])?;
        let c: F = t.c.parse().map_err(|_| Error::BadNumber(t.c.clone()))?;
        out.add_term((p, q), c);
    }
    Ok(out)
}
