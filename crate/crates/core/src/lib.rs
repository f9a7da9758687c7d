//! Exact computations with Hopf-Galois structures on embeddings of
//! multi-matrix algebras: the three elementary bundles, their strong
//! connections, the trivial bundle on `M_n`, first-order calculi, and the
//! stage decomposition of a Bratteli level.
//!
//! The algebra is generic over the scalar field ([`scalar::Field`],
//! [`scalar::RootField`]); the aliases below fix it to the cyclotomic
//! numbers [`exactnum::CycNum`] that the bundle constructions need.

pub mod brat;
pub mod bundles;
pub mod calculus;
pub mod error;
pub mod exactnum;
pub mod galois;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod multimatrix;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use exactnum::CycNum;

/// Exact rationals, for the parts that need no roots of unity.
pub type Rational = num_rational::BigRational;
pub type Scalar = CycNum;
pub type Element = multimatrix::MultiMatrixElement<CycNum>;
pub type Embedding = multimatrix::AlgebraEmbedding<CycNum>;
pub type Coaction = galois::Coaction<CycNum>;
pub type Bundle = bundles::Bundle<CycNum>;
pub type Connection = bundles::Connection<CycNum>;
pub type BackMap = bundles::BackMap<CycNum>;
pub type StagePlan = brat::StagePlan<CycNum>;
