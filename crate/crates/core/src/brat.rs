//! One level of a Bratteli diagram: a small text format, the split into
//! replication / inflation / assembly stages, and the per-piece analysis.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundles::{
    back_map, build, case2_printed_connection, closed_form_connection, connection_to_json, table_difference,
    integral_connection, verify_strong_connection, BundleCase, Case2Form, ConnectionDump, StrongConnectionReport,
};
use crate::error::{Error, Result};
use crate::galois::{galois_verdict, subalgebra_verdict, VerdictRecord};
use crate::multimatrix::{embed_case1, embed_case2, embed_case3, AlgebraEmbedding, BlockPartition, MultiMatrixAlgebra};
use crate::report::Check;
use crate::scalar::RootField;

/// `M_{d_1} ⊕ … ⊕ M_{d_s} → M_{D_1} ⊕ … ⊕ M_{D_t}` with `Λ_ij` copies of
/// input `j` in output `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliLevel {
    pub input_dims: Vec<usize>,
    pub output_dims: Vec<usize>,
    /// `t × s`, rows indexed by output blocks.
    pub multiplicity: Vec<Vec<usize>>,
}

impl BratteliLevel {
    /// Validates shape, positivity and `D_i = Σ_j Λ_ij d_j`.
    pub fn new(input_dims: Vec<usize>, output_dims: Vec<usize>, multiplicity: Vec<Vec<usize>>) -> Result<Self> {
        if input_dims.is_empty() || output_dims.is_empty() {
            return Err(Error::Malformed("level needs at least one input and one output block".into()));
        }
        if let Some(d) = input_dims.iter().chain(&output_dims).find(|d| **d == 0) {
            return Err(Error::Malformed(format!("block dimension {d} is not positive")));
        }
        if multiplicity.len() != output_dims.len() {
            return Err(Error::Malformed(format!(
                "multiplicity matrix has {} rows, expected one per output block ({})",
                multiplicity.len(),
                output_dims.len()
            )));
        }
        for (i, row) in multiplicity.iter().enumerate() {
            if row.len() != input_dims.len() {
                return Err(Error::Malformed(format!(
                    "multiplicity row {i} has {} entries, expected {}",
                    row.len(),
                    input_dims.len()
                )));
            }
            let computed: usize = row.iter().zip(&input_dims).map(|(l, d)| l * d).sum();
            if computed != output_dims[i] {
                return Err(Error::DimensionMismatch {
                    block: i,
                    computed,
                    declared: output_dims[i],
                });
            }
        }
        Ok(BratteliLevel {
            input_dims,
            output_dims,
            multiplicity,
        })
    }

    pub fn source(&self) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra::new(self.input_dims.clone()).expect("validated dims")
    }

    pub fn target(&self) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra::new(self.output_dims.clone()).expect("validated dims")
    }

    /// Output block `i` is block-diagonal with the inputs in ascending order,
    /// input `j` repeated `Λ_ij` times.
    pub fn canonical_embedding<F: RootField>(&self) -> AlgebraEmbedding<F> {
        let source = self.source();
        let target = self.target();
        let mut images = vec![crate::lincomb::SparseVec::zero(); source.dim()];
        for (i, row) in self.multiplicity.iter().enumerate() {
            let mut at = 0;
            for (j, &l) in row.iter().enumerate() {
                let d = self.input_dims[j];
                for _ in 0..l {
                    for r in 0..d {
                        for c in 0..d {
                            let u = source.index(j, r, c).expect("in range");
                            let v = target.index(i, at + r, at + c).expect("in range");
                            images[u].add_term(v, F::one());
                        }
                    }
                    at += d;
                }
            }
        }
        AlgebraEmbedding {
            source,
            target,
            images,
            kind: crate::multimatrix::EmbeddingKind::Composite,
        }
    }
}

impl fmt::Display for BratteliLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// `in 1,2; out 1,4; mult [[1,0],[2,1]]`.
pub fn render(level: &BratteliLevel) -> String {
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let rows: Vec<String> = level.multiplicity.iter().map(|r| format!("[{}]", list(r))).collect();
    format!(
        "in {}; out {}; mult [{}]",
        list(&level.input_dims),
        list(&level.output_dims),
        rows.join(",")
    )
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Num(usize),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let mut last = (1, 1);
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let chars: Vec<char> = line.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                let (l, col) = (ln + 1, i + 1);
                if c.is_whitespace() {
                    i += 1;
                } else if c.is_ascii_digit() {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s.parse().map_err(|_| syntax(l, col, format!("number {s} is too large")))?;
                    toks.push((Tok::Num(n), l, col));
                } else if c.is_ascii_alphabetic() {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    toks.push((Tok::Word(chars[start..i].iter().collect()), l, col));
                } else if "[],;".contains(c) {
                    toks.push((Tok::Sym(c), l, col));
                    i += 1;
                } else {
                    return Err(syntax(l, col, format!("unexpected character '{c}'")));
                }
            }
            last = (ln + 1, chars.len() + 1);
        }
        Ok(Lexer { toks, pos: 0, end: last })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected '{c}'"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected a number")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn list(&mut self) -> Result<Vec<usize>> {
        let mut out = vec![self.number()?];
        while self.eat(',') {
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<usize>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            rows.push(self.list()?);
            self.expect(']')?;
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }
}

/// Parses the level format: `in`, `out` and `mult` clauses in any order,
/// separated by `;` or newlines, `#` starting a comment.
pub fn parse_level(text: &str) -> Result<BratteliLevel> {
    let mut lx = Lexer::new(text)?;
    let (mut input, mut output, mut mult) = (None, None, None);
    while lx.peek().is_some() {
        if lx.eat(';') {
            continue;
        }
        let (l, c) = lx.here();
        let word = match lx.next() {
            Some(Tok::Word(w)) => w,
            _ => return Err(syntax(l, c, "expected 'in', 'out' or 'mult'")),
        };
        let dup = |name: &str| syntax(l, c, format!("'{name}' given twice"));
        match word.as_str() {
            "in" if input.is_some() => return Err(dup("in")),
            "out" if output.is_some() => return Err(dup("out")),
            "mult" if mult.is_some() => return Err(dup("mult")),
            "in" => input = Some(lx.list()?),
            "out" => output = Some(lx.list()?),
            "mult" => mult = Some(lx.matrix()?),
            other => return Err(syntax(l, c, format!("unknown clause '{other}'"))),
        }
        match lx.peek() {
            None | Some(Tok::Sym(';')) | Some(Tok::Word(_)) => {}
            _ => return Err(lx.error("expected ';'")),
        }
    }
    let missing = |name: &str| lx.error(format!("missing '{name}' clause"));
    let input = input.ok_or_else(|| missing("in"))?;
    let output = output.ok_or_else(|| missing("out"))?;
    let mult = mult.ok_or_else(|| missing("mult"))?;
    BratteliLevel::new(input, output, mult)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    /// Replicate each input summand once per output it feeds.
    A,
    /// Inflate each copy by its multiplicity.
    B,
    /// Assemble the summands of each output block.
    C,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::A => f.write_str("stage A (replication)"),
            Stage::B => f.write_str("stage B (inflation)"),
            Stage::C => f.write_str("stage C (assembly)"),
        }
    }
}

/// A summand of one stage: an elementary bundle or an identity.
#[derive(Clone, Debug)]
pub struct Piece<F: RootField> {
    pub label: String,
    /// `None` for identity pieces.
    pub case: Option<BundleCase>,
    pub source_blocks: Vec<usize>,
    pub target_blocks: Vec<usize>,
    pub embedding: AlgebraEmbedding<F>,
}

#[derive(Clone, Debug)]
pub struct StageEmbedding<F: RootField> {
    pub stage: Stage,
    pub pieces: Vec<Piece<F>>,
    pub embedding: AlgebraEmbedding<F>,
}

/// Where one copy of an input summand travels through the stages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyRecord {
    pub input: usize,
    pub output: usize,
    pub multiplicity: usize,
    /// Block index after stage A (= after stage B).
    pub intermediate_block: usize,
    /// Row offset inside output block `output` of the first repetition.
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct StagePlan<F: RootField> {
    pub level: BratteliLevel,
    pub stages: Vec<StageEmbedding<F>>,
    /// Copies in intermediate-block order: inputs ascending, then outputs.
    pub copies: Vec<CopyRecord>,
    /// Composite block order against the canonical one; identity by construction.
    pub permutation: Vec<usize>,
}

impl<F: RootField> StagePlan<F> {
    pub fn composite(&self) -> Result<AlgebraEmbedding<F>> {
        let mut it = self.stages.iter();
        let first = it.next().expect("three stages").embedding.clone();
        it.try_fold(first, |acc, s| acc.then(&s.embedding))
    }

    pub fn pieces(&self) -> impl Iterator<Item = (Stage, &Piece<F>)> {
        self.stages.iter().flat_map(|s| s.pieces.iter().map(move |p| (s.stage, p)))
    }

    /// Composite is unital, multiplicative and equal to the canonical embedding.
    pub fn check_composite(&self) -> Check {
        let name = "stages compose to the level embedding";
        let composite = match self.composite() {
            Ok(c) => c,
            Err(e) => return Check::fail(name, e.to_string()),
        };
        if let Err(e) = composite.verify() {
            return Check::fail(name, e.to_string());
        }
        let canonical = self.level.canonical_embedding::<F>();
        let witness = (0..canonical.source.dim()).find_map(|u| {
            (composite.images[u] != canonical.images[u]).then(|| {
                let e = canonical.source.unit(u);
                format!("images of E^({})_{{{},{}}} differ", e.block, e.row, e.col)
            })
        });
        Check::from_witness(name, witness)
    }
}

/// Splits a level into the three stages.
pub fn decompose<F: RootField>(level: &BratteliLevel) -> Result<StagePlan<F>> {
    let s = level.input_dims.len();
    let t = level.output_dims.len();
    let lam = &level.multiplicity;
    for j in 0..s {
        if lam.iter().all(|row| row[j] == 0) {
            return Err(Error::UnsupportedLevel(format!(
                "input block {j} has no outgoing edge; the embedding would not be unital"
            )));
        }
    }

    let mut copies = Vec::new();
    for j in 0..s {
        for (i, row) in lam.iter().enumerate() {
            if row[j] > 0 {
                let offset = (0..j).map(|jj| row[jj] * level.input_dims[jj]).sum();
                copies.push(CopyRecord {
                    input: j,
                    output: i,
                    multiplicity: row[j],
                    intermediate_block: copies.len(),
                    offset,
                });
            }
        }
    }

    let source = level.source();
    let mid_a = MultiMatrixAlgebra::new(copies.iter().map(|c| level.input_dims[c.input]).collect())?;
    let mid_b = MultiMatrixAlgebra::new(
        copies
            .iter()
            .map(|c| level.input_dims[c.input] * c.multiplicity)
            .collect(),
    )?;
    let target = level.target();

    let mut stage_a = Vec::new();
    for j in 0..s {
        let d = level.input_dims[j];
        let blocks: Vec<usize> = copies
            .iter()
            .filter(|c| c.input == j)
            .map(|c| c.intermediate_block)
            .collect();
        let b = MultiMatrixAlgebra::full(d)?;
        let (case, embedding) = if blocks.len() > 1 {
            (
                Some(BundleCase::Case3 {
                    b: vec![d],
                    n: blocks.len(),
                }),
                embed_case3(&b, blocks.len())?,
            )
        } else {
            (None, AlgebraEmbedding::identity(&b))
        };
        stage_a.push(Piece {
            label: format!("A: input {j} (M{d}) into {} copies", blocks.len()),
            case,
            source_blocks: vec![j],
            target_blocks: blocks,
            embedding,
        });
    }

    let mut stage_b = Vec::new();
    for c in &copies {
        let d = level.input_dims[c.input];
        let (case, embedding) = if c.multiplicity > 1 {
            (
                Some(BundleCase::Case2 { k: d, n: c.multiplicity }),
                embed_case2(d, c.multiplicity)?,
            )
        } else {
            (None, AlgebraEmbedding::identity(&MultiMatrixAlgebra::full(d)?))
        };
        stage_b.push(Piece {
            label: format!("B: edge input {} → output {} (M{d} ×{})", c.input, c.output, c.multiplicity),
            case,
            source_blocks: vec![c.intermediate_block],
            target_blocks: vec![c.intermediate_block],
            embedding,
        });
    }

    let mut stage_c = Vec::new();
    for i in 0..t {
        let feeding: Vec<&CopyRecord> = {
            let mut v: Vec<&CopyRecord> = copies.iter().filter(|c| c.output == i).collect();
            v.sort_by_key(|c| c.input);
            v
        };
        let lengths: Vec<usize> = feeding
            .iter()
            .map(|c| level.input_dims[c.input] * c.multiplicity)
            .collect();
        let (case, embedding) = if lengths.len() > 1 {
            (
                Some(BundleCase::Case1 { lengths: lengths.clone() }),
                embed_case1(&BlockPartition::new(lengths.clone())?),
            )
        } else {
            (None, AlgebraEmbedding::identity(&MultiMatrixAlgebra::full(lengths[0])?))
        };
        stage_c.push(Piece {
            label: format!("C: output {i} (M{})", level.output_dims[i]),
            case,
            source_blocks: feeding.iter().map(|c| c.intermediate_block).collect(),
            target_blocks: vec![i],
            embedding,
        });
    }

    let assemble = |stage: Stage, pieces: Vec<Piece<F>>, src: &MultiMatrixAlgebra, tgt: &MultiMatrixAlgebra| {
        let parts: Vec<_> = pieces
            .iter()
            .map(|p| (&p.embedding, p.source_blocks.as_slice(), p.target_blocks.as_slice()))
            .collect();
        let embedding = AlgebraEmbedding::assemble(src, tgt, &parts)?;
        Ok::<_, Error>(StageEmbedding {
            stage,
            pieces,
            embedding,
        })
    };
    let stages = vec![
        assemble(Stage::A, stage_a, &source, &mid_a)?,
        assemble(Stage::B, stage_b, &mid_a, &mid_b)?,
        assemble(Stage::C, stage_c, &mid_b, &target)?,
    ];

    // Stage C lays copies out by ascending input, which is the canonical order.
    let mut permutation: Vec<usize> = (0..copies.len()).collect();
    permutation.sort_by_key(|&k| (copies[k].output, copies[k].offset));
    Ok(StagePlan {
        level: level.clone(),
        stages,
        copies,
        permutation,
    })
}

/// How one printed reading of a formula compares with the computed table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaComparison {
    pub reading: Case2Form,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Everything computed for one elementary bundle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleReport {
    pub case: BundleCase,
    pub algebra: String,
    pub group: String,
    pub coinvariant_dim: usize,
    pub verdict: VerdictRecord,
    pub back_map: Check,
    pub connections_equal: Check,
    pub closed_form: StrongConnectionReport,
    pub integral_construction: StrongConnectionReport,
    /// Case 2 only: the printed formula under its two readings.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub printed_formula: Vec<FormulaComparison>,
    pub connection: ConnectionDump,
}

impl BundleReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_hopf_galois
            && self.back_map.passed
            && self.connections_equal.passed
            && self.closed_form.passed()
            && self.integral_construction.passed()
    }
}

/// Builds the bundle and runs the verdict, back map, both connections and
/// the strong-connection checks.
pub fn analyze_case<F: RootField>(case: &BundleCase) -> Result<BundleReport> {
    let bundle = build::<F>(case)?;
    let verdict = galois_verdict(&bundle.coaction)?;
    let back = back_map(&bundle);
    let t1 = integral_connection(&bundle, &back);
    let cf = closed_form_connection(&bundle);
    let printed_formula = match case {
        BundleCase::Case2 { k, n } => [Case2Form::PrintedBlockIndex, Case2Form::PrintedRawZm]
            .into_iter()
            .map(|reading| {
                let printed = case2_printed_connection::<F>(*k, *n, reading)?;
                let witness = table_difference(&bundle, &t1, &printed);
                Ok(FormulaComparison {
                    reading,
                    matches: witness.is_none(),
                    witness,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        _ => Vec::new(),
    };
    Ok(BundleReport {
        case: case.clone(),
        algebra: bundle.algebra().to_string(),
        group: bundle.group().to_string(),
        coinvariant_dim: bundle.a_basis.len(),
        verdict: verdict.record(Some(case.to_string()), bundle.algebra(), bundle.group()),
        back_map: Check::from_witness("back map is a section of ver♯", back.check_section(&bundle)),
        connections_equal: Check::from_witness(
            "integral construction equals closed form",
            table_difference(&bundle, &t1, &cf),
        ),
        closed_form: verify_strong_connection(&bundle, &cf),
        integral_construction: verify_strong_connection(&bundle, &t1),
        printed_formula,
        connection: connection_to_json(&bundle, &cf),
    })
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Largest matrix size `Σ D_i` a piece's target may have.
    pub max_dim: usize,
    /// Also test the undecomposed level as a bare subalgebra.
    pub direct: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            max_dim: 12,
            direct: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceReport {
    pub label: String,
    pub source_blocks: Vec<usize>,
    pub target_blocks: Vec<usize>,
    /// `None` for identity pieces.
    pub bundle: Option<BundleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: Stage,
    pub pieces: Vec<PieceReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: BratteliLevel,
    pub stages: Vec<StageReport>,
    pub copies: Vec<CopyRecord>,
    pub permutation: Vec<usize>,
    pub composite: Check,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direct: Option<VerdictRecord>,
}

impl LevelReport {
    /// Reports of the non-identity pieces, stage by stage.
    pub fn findings(&self) -> impl Iterator<Item = &BundleReport> {
        self.stages
            .iter()
            .flat_map(|s| s.pieces.iter().filter_map(|p| p.bundle.as_ref()))
    }

    /// Composite check and every piece pass.
    pub fn checks_passed(&self) -> bool {
        self.composite.passed && self.findings().all(|b| b.passed())
    }

    /// Whether every verdict, including the direct one, is positive.
    pub fn all_positive(&self) -> bool {
        self.checks_passed() && self.direct.as_ref().is_none_or(|d| d.is_hopf_galois)
    }
}

/// Runs [`analyze_case`] on every non-identity piece, concurrently.
pub fn analyze<F: RootField>(plan: &StagePlan<F>, options: &AnalyzeOptions) -> Result<LevelReport> {
    for (_, piece) in plan.pieces() {
        let dim = piece.embedding.target.total_size();
        if piece.case.is_some() && dim > options.max_dim {
            return Err(Error::SizeLimit {
                piece: piece.label.clone(),
                dim,
                max: options.max_dim,
            });
        }
    }
    let stages = plan
        .stages
        .iter()
        .map(|s| {
            let pieces = s
                .pieces
                .par_iter()
                .map(|p| {
                    Ok(PieceReport {
                        label: p.label.clone(),
                        source_blocks: p.source_blocks.clone(),
                        target_blocks: p.target_blocks.clone(),
                        bundle: p.case.as_ref().map(analyze_case::<F>).transpose()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(StageReport { stage: s.stage, pieces })
        })
        .collect::<Result<Vec<_>>>()?;
    let direct = if options.direct {
        let canonical = plan.level.canonical_embedding::<F>();
        let v = subalgebra_verdict(&canonical.target, canonical.image_basis(), None)?;
        let group = crate::hopf::FiniteAbelianGroup::cyclic(1)?;
        Some(v.record(Some(format!("direct: {}", plan.level)), &canonical.target, &group))
    } else {
        None
    };
    Ok(LevelReport {
        level: plan.level.clone(),
        stages,
        copies: plan.copies.clone(),
        permutation: plan.permutation.clone(),
        composite: plan.check_composite(),
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycNum;

    const SAMPLE_LEVEL: &str = "in 1,2; out 1,4; mult [[1,0],[2,1]]";

    #[test]
    fn parses_and_renders() {
        let level = parse_level(SAMPLE_LEVEL).unwrap();
        assert_eq!(level.input_dims, vec![1, 2]);
        assert_eq!(level.multiplicity, vec![vec![1, 0], vec![2, 1]]);
        assert_eq!(render(&level), SAMPLE_LEVEL);
        assert_eq!(parse_level(&render(&level)).unwrap(), level);
        let commented = "# level\nmult [[1,0],[2,1]]  # edges\nin 1,2\nout 1,4\n";
        assert_eq!(parse_level(commented).unwrap(), level);
    }

    #[test]
    fn parse_errors() {
        match parse_level("in 1,2; out 1,3; mult [[1,0],[2,1]]") {
            Err(Error::DimensionMismatch { block, computed, declared }) => {
                assert_eq!((block, computed, declared), (1, 4, 3))
            }
            other => panic!("{other:?}"),
        }
        match parse_level("in 1;\nout 1; mult [[1]x") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 17)),
            other => panic!("{other:?}"),
        }
        match parse_level("in 1; out 1; mult [[1] ") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_level("in 1; out 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_level("in 1 out 1; mult [[1]]; in 2"), Err(Error::Syntax { .. })));
    }

    fn cases(plan: &StagePlan<CycNum>) -> Vec<(Stage, BundleCase)> {
        plan.pieces().filter_map(|(s, p)| p.case.clone().map(|c| (s, c))).collect()
    }

    #[test]
    fn decomposes_sample_level() {
        let plan = decompose::<CycNum>(&parse_level(SAMPLE_LEVEL).unwrap()).unwrap();
        assert_eq!(
            cases(&plan),
            vec![
                (Stage::A, BundleCase::Case3 { b: vec![1], n: 2 }),
                (Stage::B, BundleCase::Case2 { k: 1, n: 2 }),
                (Stage::C, BundleCase::Case1 { lengths: vec![2, 2] }),
            ]
        );
        assert!(plan.check_composite().passed);
        for s in &plan.stages {
            s.embedding.verify().unwrap();
        }
    }

    #[test]
    fn decomposes_small_levels() {
        let id = decompose::<CycNum>(&parse_level("in 1; out 1; mult [[1]]").unwrap()).unwrap();
        assert!(cases(&id).is_empty());
        assert!(id.check_composite().passed);

        let inflate = decompose::<CycNum>(&parse_level("in 2; out 6; mult [[3]]").unwrap()).unwrap();
        assert_eq!(cases(&inflate), vec![(Stage::B, BundleCase::Case2 { k: 2, n: 3 })]);
        assert!(inflate.check_composite().passed);

        let mixed = parse_level("in 1,2; out 5,3; mult [[1,2],[1,1]]").unwrap();
        let plan = decompose::<CycNum>(&mixed).unwrap();
        assert!(plan.check_composite().passed);
        assert_eq!(plan.permutation, vec![0, 2, 1, 3]);

        let zero = BratteliLevel::new(vec![1, 1], vec![1], vec![vec![1, 0]]).unwrap();
        assert!(matches!(decompose::<CycNum>(&zero), Err(Error::UnsupportedLevel(_))));
    }

    #[test]
    fn analyzes_sample_level() {
        let plan = decompose::<CycNum>(&parse_level(SAMPLE_LEVEL).unwrap()).unwrap();
        let report = analyze(&plan, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.findings().count(), 3);
        assert!(report.checks_passed());
        let json = serde_json::to_string(&report).unwrap();
        let back: LevelReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);

        let limited = AnalyzeOptions {
            max_dim: 3,
            direct: false,
        };
        match analyze(&plan, &limited) {
            Err(Error::SizeLimit { piece, dim, .. }) => {
                assert!(piece.starts_with("C: output 1"), "{piece}");
                assert_eq!(dim, 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn direct_counterexample() {
        let level = parse_level("in 1,1; out 1,2; mult [[1,0],[1,1]]").unwrap();
        let plan = decompose::<CycNum>(&level).unwrap();
        let report = analyze(
            &plan,
            &AnalyzeOptions {
                direct: true,
                ..Default::default()
            },
        )
        .unwrap();
        let direct = report.direct.clone().unwrap();
        assert!(!direct.is_hopf_galois);
        assert_eq!(direct.dims.0, 13);
        assert_eq!(direct.obstruction.as_deref(), Some("13 not divisible by 5"));
        assert!(report.checks_passed());
        assert!(!report.all_positive());
    }
}
