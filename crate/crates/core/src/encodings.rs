//! Generators for the AMO/EO encodings and fixtures, with size accounting.
//!
//! All generators number the inputs `1..=n` and hand out auxiliary
//! variables from `n + 1` upwards in the order the construction introduces
//! them, outermost first.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{Clause, Encoding, Formula, Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid parameters: {0}")]
pub struct InvalidParameters(pub String);

/// The encodings this module knows how to build.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EncodingKind {
    /// All `n(n-1)/2` negative binary clauses.
    PairwiseAmo {
        n: usize,
    },
    /// Pairwise clauses plus the clause `x1 ∨ … ∨ xn`.
    PrimeExone {
        n: usize,
    },
    SequentialAmo {
        n: usize,
    },
    TreeAmo {
        n: usize,
    },
    ProductAmo {
        n: usize,
    },
    /// `(x1 ∨ … ∨ xn) ∧ φ` for an AMO encoding `φ`.
    ExoneWrap {
        inner: Box<EncodingKind>,
    },
    /// `(¬x1 ∨ z) ∧ φ(z, x2, …, xn)` for an AMO encoding `φ`.
    AmoWrap {
        inner: Box<EncodingKind>,
    },
    /// An encoding of EO that satisfies P1/P2 but is not propagation complete.
    NonpcExone {
        n: usize,
    },
    /// Prime PC encoding of AMO with positive input occurrences, built from
    /// a partition of the inputs into four non-empty blocks.
    PartitionFixture {
        blocks: [usize; 4],
    },
}

impl EncodingKind {
    pub const TAGS: [&'static str; 9] = [
        "pairwise-amo",
        "prime-exone",
        "sequential-amo",
        "tree-amo",
        "product-amo",
        "exone-wrap",
        "amo-wrap",
        "nonpc-exone",
        "partition-fixture",
    ];

    /// Builds a kind from its tag. Wraps take `inner` (default
    /// `sequential-amo` over the same `n`); the partition fixture takes
    /// `blocks` and ignores `n`.
    pub fn from_tag(
        tag: &str,
        n: usize,
        blocks: Option<[usize; 4]>,
        inner: Option<&str>,
    ) -> Result<EncodingKind, InvalidParameters> {
        let kind = match tag {
            "pairwise-amo" => EncodingKind::PairwiseAmo { n },
            "prime-exone" => EncodingKind::PrimeExone { n },
            "sequential-amo" => EncodingKind::SequentialAmo { n },
            "tree-amo" => EncodingKind::TreeAmo { n },
            "product-amo" => EncodingKind::ProductAmo { n },
            "nonpc-exone" => EncodingKind::NonpcExone { n },
            "exone-wrap" | "amo-wrap" => {
                let inner = EncodingKind::from_tag(inner.unwrap_or("sequential-amo"), n, None, None)?;
                let inner = Box::new(inner);
                if tag == "exone-wrap" {
                    EncodingKind::ExoneWrap { inner }
                } else {
                    EncodingKind::AmoWrap { inner }
                }
            }
            "partition-fixture" => EncodingKind::PartitionFixture {
                blocks: blocks.ok_or_else(|| InvalidParameters("partition-fixture needs four block sizes".into()))?,
            },
            other => return Err(InvalidParameters(format!("unknown encoding kind `{other}`"))),
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            EncodingKind::PairwiseAmo { .. } => "pairwise-amo",
            EncodingKind::PrimeExone { .. } => "prime-exone",
            EncodingKind::SequentialAmo { .. } => "sequential-amo",
            EncodingKind::TreeAmo { .. } => "tree-amo",
            EncodingKind::ProductAmo { .. } => "product-amo",
            EncodingKind::ExoneWrap { .. } => "exone-wrap",
            EncodingKind::AmoWrap { .. } => "amo-wrap",
            EncodingKind::NonpcExone { .. } => "nonpc-exone",
            EncodingKind::PartitionFixture { .. } => "partition-fixture",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            EncodingKind::PairwiseAmo { n }
            | EncodingKind::PrimeExone { n }
            | EncodingKind::SequentialAmo { n }
            | EncodingKind::TreeAmo { n }
            | EncodingKind::ProductAmo { n }
            | EncodingKind::NonpcExone { n } => *n,
            EncodingKind::ExoneWrap { inner } | EncodingKind::AmoWrap { inner } => inner.n(),
            EncodingKind::PartitionFixture { blocks } => blocks.iter().sum(),
        }
    }

    /// Whether the generated formula is meant to encode EO rather than AMO.
    pub fn is_exactly_one(&self) -> bool {
        matches!(
            self,
            EncodingKind::PrimeExone { .. } | EncodingKind::ExoneWrap { .. } | EncodingKind::NonpcExone { .. }
        )
    }

    /// Whether the construction only ever emits clauses of length ≤ 2.
    pub fn is_2cnf(&self) -> bool {
        match self {
            EncodingKind::PairwiseAmo { .. }
            | EncodingKind::SequentialAmo { .. }
            | EncodingKind::TreeAmo { .. }
            | EncodingKind::ProductAmo { .. } => true,
            EncodingKind::AmoWrap { inner } => inner.is_2cnf(),
            EncodingKind::PrimeExone { n } => *n <= 2,
            _ => false,
        }
    }

    pub fn validate(&self) -> Result<(), InvalidParameters> {
        let need = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(InvalidParameters(format!("{}: {msg}", self.tag())))
            }
        };
        match self {
            EncodingKind::PairwiseAmo { n } | EncodingKind::PrimeExone { n } => need(*n >= 1, "n must be at least 1"),
            EncodingKind::SequentialAmo { n }
            | EncodingKind::TreeAmo { n }
            | EncodingKind::ProductAmo { n }
            | EncodingKind::NonpcExone { n } => need(*n >= 3, "n must be at least 3"),
            EncodingKind::ExoneWrap { inner } | EncodingKind::AmoWrap { inner } => {
                need(
                    matches!(
                        **inner,
                        EncodingKind::PairwiseAmo { .. }
                            | EncodingKind::SequentialAmo { .. }
                            | EncodingKind::TreeAmo { .. }
                            | EncodingKind::ProductAmo { .. }
                    ),
                    "inner encoding must be an AMO generator",
                )?;
                inner.validate()
            }
            EncodingKind::PartitionFixture { blocks } => {
                need(blocks.iter().all(|&b| b > 0), "every block must be non-empty")
            }
        }
    }
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodingKind::ExoneWrap { inner } | EncodingKind::AmoWrap { inner } => {
                write!(f, "{}({inner})", self.tag())
            }
            EncodingKind::PartitionFixture { blocks } => {
                write!(
                    f,
                    "partition-fixture({},{},{},{})",
                    blocks[0], blocks[1], blocks[2], blocks[3]
                )
            }
            _ => write!(f, "{}({})", self.tag(), self.n()),
        }
    }
}

struct Builder {
    next: u32,
    clauses: Vec<Clause>,
}

impl Builder {
    fn new(n: usize) -> Builder {
        Builder {
            next: n as u32 + 1,
            clauses: Vec::new(),
        }
    }

    fn fresh(&mut self) -> Lit {
        let v = Var::new(self.next);
        self.next += 1;
        v.pos()
    }

    fn clause(&mut self, lits: &[Lit]) {
        self.clauses
            .push(Clause::new(lits.iter().copied()).expect("generated clauses are never tautological"));
    }

    fn pairwise(&mut self, xs: &[Lit]) {
        for (a, &xa) in xs.iter().enumerate() {
            for &xb in &xs[a + 1..] {
                self.clause(&[!xa, !xb]);
            }
        }
    }

    /// `(¬x1 ∨ ¬x2) ∧ (¬x1 ∨ y) ∧ (¬x2 ∨ y)` for a fresh `y`, returned.
    fn merge_first_two(&mut self, xs: &[Lit]) -> Lit {
        let y = self.fresh();
        self.clause(&[!xs[0], !xs[1]]);
        self.clause(&[!xs[0], y]);
        self.clause(&[!xs[1], y]);
        y
    }

    fn sequential(&mut self, xs: &[Lit]) {
        if xs.len() <= 3 {
            return self.pairwise(xs);
        }
        let y = self.merge_first_two(xs);
        let mut rest = vec![y];
        rest.extend_from_slice(&xs[2..]);
        self.sequential(&rest);
    }

    fn tree(&mut self, xs: &[Lit]) {
        if xs.len() <= 3 {
            return self.pairwise(xs);
        }
        let y = self.merge_first_two(xs);
        let mut rest = xs[2..].to_vec();
        rest.push(y);
        self.tree(&rest);
    }

    fn product(&mut self, xs: &[Lit], sizes: &[usize]) {
        let n = xs.len();
        if n <= 3 {
            return self.pairwise(xs);
        }
        match product_choice(n, sizes) {
            ProductChoice::Reduce => {
                let y = self.merge_first_two(xs);
                let mut rest = vec![y];
                rest.extend_from_slice(&xs[2..]);
                self.product(&rest, sizes);
            }
            ProductChoice::Array { rows, cols } => self.array(xs, rows, cols, &|b, ys| b.product(ys, sizes)),
        }
    }

    /// Row-major array placement: `x_i` gets row `⌈i/cols⌉` and column
    /// `((i-1) mod cols) + 1`, and AMO is imposed on the row and column
    /// selectors by `inner`.
    fn array(&mut self, xs: &[Lit], rows: usize, cols: usize, inner: &dyn Fn(&mut Builder, &[Lit])) {
        let row_vars: Vec<Lit> = (0..rows).map(|_| self.fresh()).collect();
        let col_vars: Vec<Lit> = (0..cols).map(|_| self.fresh()).collect();
        for (k, &x) in xs.iter().enumerate() {
            self.clause(&[!x, row_vars[k / cols]]);
            self.clause(&[!x, col_vars[k % cols]]);
        }
        inner(self, &row_vars);
        inner(self, &col_vars);
    }

    fn finish(self, n: usize) -> Encoding {
        let formula = Formula::new(self.clauses);
        let inputs = (1..=n as u32).map(Var::new).collect();
        let aux: BTreeSet<Var> = (n as u32 + 1..self.next).map(Var::new).collect();
        Encoding::new(formula, inputs, aux).expect("generators produce well-formed encodings")
    }
}

fn input_lits(n: usize) -> Vec<Lit> {
    (1..=n as u32).map(|i| Var::new(i).pos()).collect()
}

/// `⌈√n⌉` for `n ≥ 1`.
pub fn ceil_sqrt(n: usize) -> usize {
    let r = (n - 1).isqrt() + 1;
    debug_assert!(r * r >= n && (r - 1) * (r - 1) < n);
    r
}

/// Array dimensions of the product construction: `m1 = ⌈√n⌉`, `m2 = ⌈n/m1⌉`.
pub fn product_dimensions(n: usize) -> (usize, usize) {
    let m1 = ceil_sqrt(n);
    (m1, n.div_ceil(m1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "candidate", rename_all = "kebab-case")]
pub enum ProductChoice {
    /// Merge `x1, x2` into a fresh variable and recurse on `n - 1` inputs.
    Reduce,
    /// Arrange the inputs in a `rows × cols` array.
    Array { rows: usize, cols: usize },
}

/// Sizes of the two top-level product candidates for `n ≥ 4`:
/// `(reduce, array)`, the latter only for `n ≥ 7`.
pub fn product_candidates(n: usize) -> (usize, Option<usize>) {
    let sizes = product_size_table(n);
    candidate_sizes(n, &sizes)
}

fn candidate_sizes(n: usize, sizes: &[usize]) -> (usize, Option<usize>) {
    let reduce = 3 + sizes[n - 1];
    let array = (n >= 7).then(|| {
        let (m1, m2) = product_dimensions(n);
        2 * n + sizes[m1] + sizes[m2]
    });
    (reduce, array)
}

fn product_choice(n: usize, sizes: &[usize]) -> ProductChoice {
    match candidate_sizes(n, sizes) {
        (reduce, Some(array)) if array <= reduce => {
            let (rows, cols) = product_dimensions(n);
            ProductChoice::Array { rows, cols }
        }
        _ => ProductChoice::Reduce,
    }
}

/// Which candidate the product construction picks at the top level.
pub fn product_top_choice(n: usize) -> ProductChoice {
    if n <= 3 {
        return ProductChoice::Reduce;
    }
    product_choice(n, &product_size_table(n))
}

/// `sizes[k]` is the product encoding size for `k` inputs, `3 ≤ k ≤ n`;
/// entries below 3 hold the pairwise size.
pub fn product_size_table(n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = (0..=n.max(3)).map(|k| k * k.saturating_sub(1) / 2).collect();
    for k in 4..=n {
        let (reduce, array) = candidate_sizes(k, &sizes);
        sizes[k] = array.map_or(reduce, |a| a.min(reduce));
    }
    sizes
}

pub fn product_size(n: usize) -> usize {
    product_size_table(n)[n]
}

/// The array construction forced at the top level with the given dimensions
/// and pairwise AMO on the selectors; `rows * cols ≥ n` is required.
pub fn array_amo(n: usize, rows: usize, cols: usize) -> Result<Encoding, InvalidParameters> {
    if n < 2 || rows < 1 || cols < 1 || rows * cols < n || n.div_ceil(cols) != rows {
        return Err(InvalidParameters(format!(
            "array-amo: {rows}x{cols} does not fit {n} inputs row by row without empty rows"
        )));
    }
    let mut b = Builder::new(n);
    b.array(&input_lits(n), rows, cols, &|b, ys| b.pairwise(ys));
    Ok(b.finish(n))
}

pub fn generate(kind: &EncodingKind) -> Result<Encoding, InvalidParameters> {
    kind.validate()?;
    let n = kind.n();
    let xs = input_lits(n);
    let mut b = Builder::new(n);
    match kind {
        EncodingKind::PairwiseAmo { .. } => b.pairwise(&xs),
        EncodingKind::PrimeExone { .. } => {
            b.pairwise(&xs);
            b.clause(&xs);
        }
        EncodingKind::SequentialAmo { .. } => b.sequential(&xs),
        EncodingKind::TreeAmo { .. } => b.tree(&xs),
        EncodingKind::ProductAmo { .. } => b.product(&xs, &product_size_table(n)),
        EncodingKind::ExoneWrap { inner } => {
            let inner = generate(inner)?;
            b.clause(&xs);
            b.clauses.extend(inner.formula().iter().cloned());
            b.next = (inner.num_vars() + 1) as u32;
        }
        EncodingKind::AmoWrap { inner } => {
            let z = b.fresh();
            b.clause(&[!xs[0], z]);
            let inner = generate(inner)?;
            // Inner input 1 becomes z; inner auxiliaries shift up past z.
            for clause in inner.formula() {
                let lits: Vec<Lit> = clause
                    .iter()
                    .map(|&l| {
                        let v = l.var().index();
                        let target = if v == 1 {
                            z.var()
                        } else if v <= n {
                            l.var()
                        } else {
                            Var::new(v as u32 + 1)
                        };
                        Lit::new(target, l.is_positive())
                    })
                    .collect();
                b.clause(&lits);
            }
            b.next = (inner.num_vars() + 2) as u32;
        }
        EncodingKind::NonpcExone { .. } => {
            let y = b.fresh();
            let mut first: Vec<Lit> = xs[..n - 2].to_vec();
            first.push(xs[n - 1]);
            first.push(y);
            b.clause(&first);
            b.clause(&[xs[n - 2], xs[n - 1], !y]);
            b.pairwise(&xs);
        }
        EncodingKind::PartitionFixture { blocks } => partition_fixture(&mut b, &xs, blocks),
    }
    Ok(b.finish(n))
}

/// Block membership of input `i` (0-based) in the partition fixture.
pub fn partition_block(blocks: &[usize; 4], i: usize) -> usize {
    let mut end = 0;
    for (k, &size) in blocks.iter().enumerate() {
        end += size;
        if i < end {
            return k;
        }
    }
    panic!("input {i} lies outside the partition");
}

fn partition_fixture(b: &mut Builder, xs: &[Lit], blocks: &[usize; 4]) {
    let block_of = |i: usize| partition_block(blocks, i);
    let separated = |p: usize, q: usize| matches!((p.min(q), p.max(q)), (0, 1) | (2, 3));
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if !separated(block_of(i), block_of(j)) {
                b.clause(&[!xs[i], !xs[j]]);
            }
        }
    }
    let ys: Vec<Lit> = (0..5).map(|_| b.fresh()).collect();
    b.clause(&ys);
    let members = |k: usize| -> Vec<Lit> { (0..xs.len()).filter(|&i| block_of(i) == k).map(|i| xs[i]).collect() };
    // y1: some A, no B; y2: some B, no A; y3: some C, no D; y4: some D, no C.
    for (y, (pos, neg)) in ys.iter().zip([(0, 1), (1, 0), (2, 3), (3, 2)]) {
        let mut some = vec![!*y];
        some.extend(members(pos));
        b.clause(&some);
        for x in members(neg) {
            b.clause(&[!*y, !x]);
        }
    }
    for &x in xs {
        b.clause(&[!ys[4], !x]);
    }
}

/// The clause `¬y1 ∨ ⋁_{i ∈ A} x_i` of the partition fixture.
pub fn partition_fixture_first_block_clause(blocks: &[usize; 4]) -> Clause {
    let n: usize = blocks.iter().sum();
    let y1 = Var::new(n as u32 + 1).neg();
    Clause::new(std::iter::once(y1).chain((1..=blocks[0] as u32).map(|i| Var::new(i).pos())))
        .expect("distinct variables")
}

pub fn expected_size(kind: &EncodingKind) -> Result<usize, InvalidParameters> {
    kind.validate()?;
    let pairs = |n: usize| n * (n - 1) / 2;
    Ok(match kind {
        EncodingKind::PairwiseAmo { n } => pairs(*n),
        EncodingKind::PrimeExone { n } => pairs(*n) + 1,
        EncodingKind::SequentialAmo { n } | EncodingKind::TreeAmo { n } => 3 * n - 6,
        EncodingKind::ProductAmo { n } => product_size(*n),
        EncodingKind::ExoneWrap { inner } | EncodingKind::AmoWrap { inner } => expected_size(inner)? + 1,
        EncodingKind::NonpcExone { n } => pairs(*n) + 2,
        EncodingKind::PartitionFixture { blocks } => {
            let n: usize = blocks.iter().sum();
            pairs(n) - blocks[0] * blocks[1] - blocks[2] * blocks[3] + 5 + 2 * n
        }
    })
}
