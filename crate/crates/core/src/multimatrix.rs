//! Multi-matrix algebras `M_{d_1} ⊕ … ⊕ M_{d_s}`, their elements, and the
//! three elementary embeddings (block diagonal, diagonal replication inside
//! one matrix, replication into a direct sum).
//!
//! Elements have two representations: the dense [`MultiMatrixElement`] for
//! the public API and JSON, and a [`SparseVec`] over the matrix-unit basis
//! used by all the linear algebra. Basis position `u` enumerates the units
//! block by block, row-major within a block.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::lincomb::SparseVec;
use crate::scalar::Field;

/// Dense square matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    size: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(size: usize) -> Self {
        Matrix {
            size,
            data: vec![F::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Malformed("matrix rows must form a square".into()));
        }
        Ok(Matrix {
            size,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.size + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        Matrix {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            size: self.size,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inverse()?;
            for j in 0..n {
                let x = a.get(col, j).clone() * p.clone();
                a.set(col, j, x);
                let y = inv.get(col, j).clone() * p.clone();
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, x);
                    let y = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }
}

/// `M_{d_1} ⊕ … ⊕ M_{d_s}`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct MultiMatrixAlgebra {
    block_dims: Vec<usize>,
    offsets: Vec<usize>,
}

/// A matrix unit `E^{(block)}_{row,col}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Unit {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl MultiMatrixAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "block dimensions must be a nonempty list of positive integers, got {block_dims:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(block_dims.len());
        let mut acc = 0;
        for d in &block_dims {
            offsets.push(acc);
            acc += d * d;
        }
        Ok(MultiMatrixAlgebra {
            block_dims,
            offsets,
        })
    }

    /// The full matrix algebra `M_m`.
    pub fn full(m: usize) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// `Σ d_i²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|d| d * d).sum()
    }

    /// `Σ d_i`, the size of the matrices the algebra sits in.
    pub fn total_size(&self) -> usize {
        self.block_dims.iter().sum()
    }

    pub fn index(&self, block: usize, row: usize, col: usize) -> Result<usize> {
        let d = *self.block_dims.get(block).ok_or(Error::IndexOutOfRange {
            what: "block",
            index: block,
            bound: self.block_dims.len(),
        })?;
        if row >= d || col >= d {
            return Err(Error::IndexOutOfRange {
                what: "matrix index",
                index: row.max(col),
                bound: d,
            });
        }
        Ok(self.offsets[block] + row * d + col)
    }

    pub fn unit(&self, u: usize) -> Unit {
        let block = match self.offsets.binary_search(&u) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let d = self.block_dims[block];
        let r = u - self.offsets[block];
        Unit {
            block,
            row: r / d,
            col: r % d,
        }
    }

    pub fn units(&self) -> impl Iterator<Item = Unit> + '_ {
        (0..self.dim()).map(|u| self.unit(u))
    }

    /// Product of two basis units: a unit or zero.
    pub fn mul_units(&self, a: usize, b: usize) -> Option<usize> {
        let ua = self.unit(a);
        let ub = self.unit(b);
        if ua.block == ub.block && ua.col == ub.row {
            Some(self.offsets[ua.block] + ua.row * self.block_dims[ua.block] + ub.col)
        } else {
            None
        }
    }

    pub fn mul<F: Field>(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                if let Some(k) = self.mul_units(*i, *j) {
                    out.add_term(k, x.clone() * y.clone());
                }
            }
        }
        out
    }

    pub fn one<F: Field>(&self) -> SparseVec<F> {
        let mut v = SparseVec::zero();
        for (b, &d) in self.block_dims.iter().enumerate() {
            for i in 0..d {
                v.add_term(self.offsets[b] + i * d + i, F::one());
            }
        }
        v
    }

    /// The identity of one block, `1_{,b}`.
    pub fn block_one<F: Field>(&self, block: usize) -> SparseVec<F> {
        let d = self.block_dims[block];
        (0..d)
            .map(|i| (self.offsets[block] + i * d + i, F::one()))
            .collect()
    }

    /// `self^{⊕n}`, blocks repeated in order.
    pub fn repeated(&self, n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .flat_map(|_| self.block_dims.iter().copied())
                .collect(),
        )
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }
}

impl fmt::Display for MultiMatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.block_dims.iter().map(|d| format!("M{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// An element of a multi-matrix algebra, one dense block per summand.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiMatrixElement<F> {
    algebra: MultiMatrixAlgebra,
    blocks: Vec<Matrix<F>>,
}

/// Which operation [`algebra_arith`] performs.
#[derive(Clone, Debug)]
pub enum ArithOp<F> {
    Add,
    Mul,
    Scale(F),
}

impl<F: Field> MultiMatrixElement<F> {
    pub fn zero(algebra: &MultiMatrixAlgebra) -> Self {
        MultiMatrixElement {
            algebra: algebra.clone(),
            blocks: algebra.block_dims.iter().map(|&d| Matrix::zeros(d)).collect(),
        }
    }

    pub fn one(algebra: &MultiMatrixAlgebra) -> Self {
        MultiMatrixElement {
            algebra: algebra.clone(),
            blocks: algebra
                .block_dims
                .iter()
                .map(|&d| Matrix::identity(d))
                .collect(),
        }
    }

    pub fn from_blocks(algebra: &MultiMatrixAlgebra, blocks: Vec<Matrix<F>>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks()
            || blocks
                .iter()
                .zip(algebra.block_dims())
                .any(|(m, &d)| m.size() != d)
        {
            return Err(Error::AlgebraMismatch(format!(
                "blocks do not match {algebra}"
            )));
        }
        Ok(MultiMatrixElement {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn from_sparse(algebra: &MultiMatrixAlgebra, v: &SparseVec<F>) -> Self {
        let mut e = Self::zero(algebra);
        for (u, c) in v.iter() {
            let unit = algebra.unit(*u);
            let x = e.blocks[unit.block].get(unit.row, unit.col).clone() + c.clone();
            e.blocks[unit.block].set(unit.row, unit.col, x);
        }
        e
    }

    pub fn to_sparse(&self) -> SparseVec<F> {
        let mut v = SparseVec::zero();
        for (b, m) in self.blocks.iter().enumerate() {
            let off = self.algebra.offsets[b];
            for (k, c) in m.entries().iter().enumerate() {
                v.add_term(off + k, c.clone());
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .all(|m| m.entries().iter().all(|c| c.is_zero()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(format!(
                "{} vs {}",
                self.algebra, other.algebra
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(MultiMatrixElement {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(MultiMatrixElement {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        MultiMatrixElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Blockwise inverse, `None` if some block is singular.
    pub fn inverse(&self) -> Option<Self> {
        Some(MultiMatrixElement {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .map(Matrix::inverse)
                .collect::<Option<Vec<_>>>()?,
        })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        ab.try_add(&ba.scale(&-F::one()))
    }

    /// One block per entry, each a row-major array of scalar strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|m| {
                    Value::Array(
                        m.entries()
                            .iter()
                            .map(|c| Value::String(c.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(algebra: &MultiMatrixAlgebra, value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Malformed(format!("element: {m}"));
        let blocks = value.as_array().ok_or_else(|| bad("expected array of blocks"))?;
        if blocks.len() != algebra.num_blocks() {
            return Err(bad("wrong number of blocks"));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for (b, &d) in blocks.iter().zip(algebra.block_dims()) {
            let entries = b.as_array().ok_or_else(|| bad("block must be an array"))?;
            if entries.len() != d * d {
                return Err(bad("block has wrong length"));
            }
            let data = entries
                .iter()
                .map(|e| {
                    e.as_str()
                        .and_then(|s| s.parse::<F>().ok())
                        .ok_or_else(|| bad("bad scalar"))
                })
                .collect::<Result<Vec<F>>>()?;
            out.push(Matrix { size: d, data });
        }
        Self::from_blocks(algebra, out)
    }
}

/// `E^{(block)}_{ij}`.
pub fn matrix_unit<F: Field>(
    algebra: &MultiMatrixAlgebra,
    block: usize,
    i: usize,
    j: usize,
) -> Result<MultiMatrixElement<F>> {
    let u = algebra.index(block, i, j)?;
    Ok(MultiMatrixElement::from_sparse(algebra, &SparseVec::basis(u)))
}

/// Blockwise exact arithmetic; `b` is ignored for [`ArithOp::Scale`].
pub fn algebra_arith<F: Field>(
    a: &MultiMatrixElement<F>,
    b: &MultiMatrixElement<F>,
    op: ArithOp<F>,
) -> Result<MultiMatrixElement<F>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Scale(c) => Ok(a.scale(&c)),
    }
}

/// Lengths `l_0, …, l_{n−1}` dividing rows and columns of `M_m` into intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockPartition {
    lengths: Vec<usize>,
    starts: Vec<usize>,
    block_of: Vec<usize>,
}

impl BlockPartition {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "block lengths must be a nonempty list of positive integers, got {lengths:?}"
            )));
        }
        let mut starts = Vec::with_capacity(lengths.len());
        let mut block_of = Vec::new();
        let mut acc = 0;
        for (q, &l) in lengths.iter().enumerate() {
            starts.push(acc);
            block_of.extend(std::iter::repeat_n(q, l));
            acc += l;
        }
        Ok(BlockPartition {
            lengths,
            starts,
            block_of,
        })
    }

    /// `n` equal blocks of length `k`.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::new(vec![k; n])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn m(&self) -> usize {
        self.block_of.len()
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// `(j)`: the block containing row or column `j`.
    pub fn block_of(&self, j: usize) -> usize {
        self.block_of[j]
    }

    pub fn start(&self, q: usize) -> usize {
        self.starts[q]
    }

    pub fn length_of_block_containing(&self, j: usize) -> usize {
        self.lengths[self.block_of[j]]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Case1,
    Case2,
    Case3,
    Identity,
    Composite,
}

/// A linear map between multi-matrix algebras, given on the source basis.
#[derive(Clone, Debug)]
pub struct AlgebraEmbedding<F: Field> {
    pub source: MultiMatrixAlgebra,
    pub target: MultiMatrixAlgebra,
    pub images: Vec<SparseVec<F>>,
    pub kind: EmbeddingKind,
}

impl<F: Field> AlgebraEmbedding<F> {
    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        v.map_linear(|u| self.images[*u].clone())
    }

    pub fn apply_element(&self, x: &MultiMatrixElement<F>) -> Result<MultiMatrixElement<F>> {
        if x.algebra() != &self.source {
            return Err(Error::AlgebraMismatch(format!(
                "embedding source is {}, element lives in {}",
                self.source,
                x.algebra()
            )));
        }
        Ok(MultiMatrixElement::from_sparse(
            &self.target,
            &self.apply(&x.to_sparse()),
        ))
    }

    /// Images of the source basis; a basis of the image subalgebra when injective.
    pub fn image_basis(&self) -> &[SparseVec<F>] {
        &self.images
    }

    /// Checks unitality and multiplicativity on every pair of basis units.
    pub fn verify(&self) -> Result<()> {
        let one = self.apply(&self.source.one());
        if one != self.target.one() {
            return Err(Error::InvalidEmbedding("not unital".into()));
        }
        let n = self.source.dim();
        for a in 0..n {
            for b in 0..n {
                let lhs = match self.source.mul_units(a, b) {
                    Some(c) => self.images[c].clone(),
                    None => SparseVec::zero(),
                };
                let rhs = self.target.mul(&self.images[a], &self.images[b]);
                if lhs != rhs {
                    return Err(Error::InvalidEmbedding(format!(
                        "not multiplicative on units {:?}, {:?}",
                        self.source.unit(a),
                        self.source.unit(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &AlgebraEmbedding<F>) -> Result<AlgebraEmbedding<F>> {
        if self.target != then.source {
            return Err(Error::AlgebraMismatch(format!(
                "cannot compose: {} then {}",
                self.target, then.source
            )));
        }
        Ok(AlgebraEmbedding {
            source: self.source.clone(),
            target: then.target.clone(),
            images: self.images.iter().map(|v| then.apply(v)).collect(),
            kind: EmbeddingKind::Composite,
        })
    }

    pub fn identity(algebra: &MultiMatrixAlgebra) -> Self {
        AlgebraEmbedding {
            source: algebra.clone(),
            target: algebra.clone(),
            images: (0..algebra.dim()).map(SparseVec::basis).collect(),
            kind: EmbeddingKind::Identity,
        }
    }

    /// Direct sum of piece embeddings; piece `p` sends its local source blocks
    /// to `source_blocks[p]` and its local target blocks to `target_blocks[p]`
    /// of the global algebras.
    pub fn assemble(
        source: &MultiMatrixAlgebra,
        target: &MultiMatrixAlgebra,
        pieces: &[(&AlgebraEmbedding<F>, &[usize], &[usize])],
    ) -> Result<AlgebraEmbedding<F>> {
        let mut images = vec![None; source.dim()];
        for (emb, src_blocks, tgt_blocks) in pieces {
            if src_blocks.len() != emb.source.num_blocks() || tgt_blocks.len() != emb.target.num_blocks() {
                return Err(Error::InvalidEmbedding("piece block count mismatch".into()));
            }
            for u in 0..emb.source.dim() {
                let lu = emb.source.unit(u);
                let gu = source.index(src_blocks[lu.block], lu.row, lu.col)?;
                let img = emb.images[u].map_keys(|v| {
                    let lv = emb.target.unit(*v);
                    target
                        .index(tgt_blocks[lv.block], lv.row, lv.col)
                        .expect("piece target block fits")
                });
                images[gu] = Some(img);
            }
        }
        let images = images
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidEmbedding("pieces do not cover the source".into()))?;
        Ok(AlgebraEmbedding {
            source: source.clone(),
            target: target.clone(),
            images,
            kind: EmbeddingKind::Composite,
        })
    }
}

/// `M_{l_0} ⊕ … ⊕ M_{l_{n−1}} → M_m`, block diagonal.
pub fn embed_case1<F: Field>(partition: &BlockPartition) -> AlgebraEmbedding<F> {
    let source = MultiMatrixAlgebra::new(partition.lengths().to_vec()).expect("valid partition");
    let target = MultiMatrixAlgebra::full(partition.m()).expect("m > 0");
    let images = source
        .units()
        .map(|u| {
            let s = partition.start(u.block);
            SparseVec::basis(target.index(0, s + u.row, s + u.col).expect("in range"))
        })
        .collect();
    AlgebraEmbedding {
        source,
        target,
        images,
        kind: EmbeddingKind::Case1,
    }
}

/// `M_k → M_{nk}`, `x ↦ diag(x, …, x)`.
pub fn embed_case2<F: Field>(k: usize, n: usize) -> Result<AlgebraEmbedding<F>> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("k and n must be positive".into()));
    }
    let source = MultiMatrixAlgebra::full(k)?;
    let target = MultiMatrixAlgebra::full(k * n)?;
    let images = source
        .units()
        .map(|u| {
            (0..n)
                .map(|r| {
                    (
                        target.index(0, u.row + k * r, u.col + k * r).expect("in range"),
                        F::one(),
                    )
                })
                .collect()
        })
        .collect();
    Ok(AlgebraEmbedding {
        source,
        target,
        images,
        kind: EmbeddingKind::Case2,
    })
}

/// `rep: B → B^{⊕n}`, `b ↦ b ⊕ … ⊕ b`.
pub fn embed_case3<F: Field>(b: &MultiMatrixAlgebra, n: usize) -> Result<AlgebraEmbedding<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let target = b.repeated(n)?;
    let nb = b.num_blocks();
    let images = b
        .units()
        .map(|u| {
            (0..n)
                .map(|s| {
                    (
                        target.index(s * nb + u.block, u.row, u.col).expect("in range"),
                        F::one(),
                    )
                })
                .collect()
        })
        .collect();
    Ok(AlgebraEmbedding {
        source: b.clone(),
        target,
        images,
        kind: EmbeddingKind::Case3,
    })
}
