//! Exhaustive search for minimum-size formulas without auxiliary variables
//! on at most four inputs.
//!
//! Everything here works on bitmasks and truth tables and shares no code with
//! the propagation engine or the PC checker, so it can serve as an
//! independent reference for both.

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{Clause, Encoding, Formula, Lit, PartialAssignment, Var};
use crate::verify::FunctionSpec;

pub const MAX_SEARCH_INPUTS: usize = 4;
pub const MAX_SEARCH_SIZE: usize = 8;
/// Largest budget for which a minimum without auxiliaries is also a minimum
/// over all encodings.
pub const CERTIFIED_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search: {0}")]
    InvalidSpec(String),
    #[error("budget {max_size} exceeds {CERTIFIED_SIZE}; searching without auxiliaries cannot certify minimality there (set unsafe_no_aux to search anyway)")]
    UnjustifiedBudget { max_size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    /// Same models as the function.
    Encoding,
    /// `φ ∧ x_i` satisfiable and `φ ∧ x_i ⊢1 ¬x_j` for all `i ≠ j`.
    PEncoding,
    /// An encoding on which propagation is complete for input literals.
    InputPc,
}

impl Requirement {
    pub fn tag(self) -> &'static str {
        match self {
            Requirement::Encoding => "enc",
            Requirement::PEncoding => "p",
            Requirement::InputPc => "input-pc",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Requirement> {
        match tag {
            "enc" | "encoding" => Some(Requirement::Encoding),
            "p" | "p-encoding" => Some(Requirement::PEncoding),
            "input-pc" | "pc" => Some(Requirement::InputPc),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub function: FunctionSpec,
    pub require: Requirement,
    pub max_size: usize,
    pub unsafe_no_aux: bool,
}

impl SearchSpec {
    pub fn new(function: FunctionSpec, require: Requirement, max_size: usize) -> SearchSpec {
        SearchSpec {
            function,
            require,
            max_size,
            unsafe_no_aux: false,
        }
    }

    pub fn n(&self) -> usize {
        self.function.n
    }

    fn validate(&self) -> Result<(), SearchError> {
        let n = self.n();
        if n == 0 || n > MAX_SEARCH_INPUTS {
            return Err(SearchError::InvalidSpec(format!(
                "n = {n} is outside 1..={MAX_SEARCH_INPUTS}"
            )));
        }
        if self.max_size > MAX_SEARCH_SIZE {
            return Err(SearchError::InvalidSpec(format!(
                "max size {} exceeds {MAX_SEARCH_SIZE}",
                self.max_size
            )));
        }
        if self.max_size > CERTIFIED_SIZE && !self.unsafe_no_aux {
            return Err(SearchError::UnjustifiedBudget {
                max_size: self.max_size,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found { size: usize, witness: Encoding },
    NoneWithinBudget { max_size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Subsets enumerated, including those skipped as non-canonical.
    pub nodes: u64,
    /// Canonical subsets whose requirement was tested.
    pub checked: u64,
    /// Clauses that can appear in a solution.
    pub candidates: usize,
    /// The size is a minimum over encodings with auxiliaries as well.
    pub certified: bool,
}

impl SearchResult {
    pub fn size(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Found { size, .. } => Some(*size),
            SearchOutcome::NoneWithinBudget { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Encoding> {
        match &self.outcome {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::NoneWithinBudget { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "literals", rename_all = "kebab-case")]
pub enum Consequences {
    Literals(Vec<Lit>),
    Inconsistent,
}

/// Input literals entailed by `f ∧ assumptions`, by scanning the truth table.
/// Assumption literals on variables beyond `f.n` are ignored.
pub fn semantic_consequences(f: &FunctionSpec, assumptions: &PartialAssignment) -> Consequences {
    let (mut t, mut fl) = (0u64, 0u64);
    for l in assumptions.lits() {
        let v = l.var().index() - 1;
        if v < f.n {
            if l.is_positive() {
                t |= 1 << v;
            } else {
                fl |= 1 << v;
            }
        }
    }
    let full = if f.n == 64 { u64::MAX } else { (1u64 << f.n) - 1 };
    let (mut always, mut never, mut any) = (full, full, false);
    for alpha in f.models() {
        if alpha & t == t && alpha & fl == 0 {
            any = true;
            always &= alpha;
            never &= !alpha;
        }
    }
    if !any {
        return Consequences::Inconsistent;
    }
    let mut lits: Vec<Lit> = (0..f.n)
        .filter_map(|k| {
            let var = Var::new(k as u32 + 1);
            if always >> k & 1 == 1 {
                Some(var.pos())
            } else if never >> k & 1 == 1 {
                Some(var.neg())
            } else {
                None
            }
        })
        .collect();
    lits.sort_unstable();
    Consequences::Literals(lits)
}

/// A clause over at most four inputs as positive and negative bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Small {
    pos: u8,
    neg: u8,
}

impl Small {
    fn from_clause(c: &Clause) -> Small {
        let mut s = Small { pos: 0, neg: 0 };
        for l in c.iter() {
            let bit = 1 << (l.var().index() - 1);
            if l.is_positive() {
                s.pos |= bit;
            } else {
                s.neg |= bit;
            }
        }
        s
    }

    fn to_clause(self, n: usize) -> Clause {
        let lits = (0..n).flat_map(|k| {
            let var = Var::new(k as u32 + 1);
            [
                (self.pos >> k & 1 == 1).then(|| var.pos()),
                (self.neg >> k & 1 == 1).then(|| var.neg()),
            ]
        });
        Clause::new(lits.flatten()).expect("search clauses are not tautological")
    }

    fn satisfied_by(self, alpha: u8) -> bool {
        alpha & self.pos != 0 || !alpha & self.neg != 0
    }

    fn permuted(self, perm: &[usize]) -> Small {
        let map = |m: u8| {
            (0..perm.len())
                .filter(|&k| m >> k & 1 == 1)
                .fold(0u8, |acc, k| acc | 1 << perm[k])
        };
        Small {
            pos: map(self.pos),
            neg: map(self.neg),
        }
    }

    fn key(self) -> usize {
        (self.pos as usize) << 4 | self.neg as usize
    }
}

/// Unit propagation on bitmask clauses; `None` on conflict.
fn propagate(clauses: &[Small], mut t: u8, mut f: u8) -> Option<(u8, u8)> {
    if t & f != 0 {
        return None;
    }
    loop {
        let mut changed = false;
        for c in clauses {
            if c.pos & t != 0 || c.neg & f != 0 {
                continue;
            }
            let open_pos = c.pos & !(t | f);
            let open_neg = c.neg & !(t | f);
            match (open_pos | open_neg).count_ones() {
                0 => return None,
                1 => {
                    t |= open_pos;
                    f |= open_neg;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Some((t, f));
        }
    }
}

fn models_mask(clauses: &[Small], n: usize) -> u16 {
    (0..1u8 << n)
        .filter(|&a| clauses.iter().all(|c| c.satisfied_by(a)))
        .fold(0u16, |m, a| m | 1 << a)
}

fn function_mask(f: &FunctionSpec) -> u16 {
    f.models().into_iter().fold(0u16, |m, a| m | 1 << a)
}

fn meets(clauses: &[Small], n: usize, target: u16, require: Requirement) -> bool {
    let mask = models_mask(clauses, n);
    let all = (1u8 << n) - 1;
    match require {
        Requirement::Encoding => mask == target,
        Requirement::PEncoding => (0..n).all(|i| {
            let bit = 1u8 << i;
            let satisfiable = (0..1u8 << n).any(|a| a & bit != 0 && mask >> a & 1 == 1);
            satisfiable && propagate(clauses, bit, 0).is_some_and(|(_, f)| f & (all & !bit) == all & !bit)
        }),
        Requirement::InputPc => mask == target && propagation_complete(clauses, n, target),
    }
}

fn propagation_complete(clauses: &[Small], n: usize, target: u16) -> bool {
    let all = (1u8 << n) - 1;
    // Each variable is true, false or free: enumerate base-3 codes.
    (1..3usize.pow(n as u32)).all(|code| {
        let (mut t, mut f, mut rest) = (0u8, 0u8, code);
        for k in 0..n {
            match rest % 3 {
                1 => t |= 1 << k,
                2 => f |= 1 << k,
                _ => {}
            }
            rest /= 3;
        }
        let (mut always, mut never, mut any) = (all, all, false);
        for a in 0..1u8 << n {
            if target >> a & 1 == 1 && a & t == t && a & f == 0 {
                any = true;
                always &= a;
                never &= !a;
            }
        }
        match propagate(clauses, t, f) {
            None => !any,
            Some((dt, df)) => any && dt & always == always && df & never == never,
        }
    })
}

/// Whether a formula over the inputs `1..=n` (no auxiliaries) meets the
/// requirement for `f`. Independent of the general-purpose checkers.
pub fn meets_requirement(formula: &Formula, f: &FunctionSpec, require: Requirement) -> bool {
    assert!(f.n <= MAX_SEARCH_INPUTS, "at most {MAX_SEARCH_INPUTS} inputs");
    assert!(
        formula.max_var().is_none_or(|v| v.index() <= f.n),
        "formula mentions non-inputs"
    );
    let clauses: Vec<Small> = formula.iter().map(Small::from_clause).collect();
    meets(&clauses, f.n, function_mask(f), require)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_automorphism(f: &FunctionSpec, perm: &[usize]) -> bool {
    (0..1u64 << f.n).all(|a| {
        let image = (0..f.n)
            .filter(|&k| a >> k & 1 == 1)
            .fold(0u64, |acc, k| acc | 1 << perm[k]);
        f.value(a) == f.value(image)
    })
}

/// All non-tautological, non-empty clauses over `n` variables in canonical
/// clause order.
fn clause_universe(n: usize) -> Vec<Small> {
    let mut clauses: Vec<Clause> = Vec::new();
    for pos in 0..1u8 << n {
        for neg in 0..1u8 << n {
            if pos & neg == 0 && pos | neg != 0 {
                clauses.push(Small { pos, neg }.to_clause(n));
            }
        }
    }
    clauses.sort();
    clauses.iter().map(Small::from_clause).collect()
}

/// Advances `c` to the next `k`-subset of `0..m` in colexicographic order.
fn next_colex(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for j in 0..k {
        let limit = if j + 1 < k { c[j + 1] } else { m };
        if c[j] + 1 < limit {
            c[j] += 1;
            for (l, slot) in c[..j].iter_mut().enumerate() {
                *slot = l;
            }
            return true;
        }
    }
    false
}

/// Smallest formula without auxiliaries meeting the requirement, searching
/// sizes in increasing order and subsets of each size in colexicographic
/// order of the canonical clause list. Subsets that are not lexicographically
/// minimal among their images under the function's input symmetries are
/// skipped.
pub fn find_minimum(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    spec.validate()?;
    let n = spec.n();
    let target = function_mask(&spec.function);
    // Clauses of a solution must hold on the models every solution keeps:
    // all models of f for encodings, the unit vectors for p-encodings.
    let kept: Vec<u8> = match spec.require {
        Requirement::PEncoding => (0..n).map(|i| 1u8 << i).collect(),
        _ => (0..1u8 << n).filter(|&a| target >> a & 1 == 1).collect(),
    };
    let candidates: Vec<Small> = clause_universe(n)
        .into_iter()
        .filter(|c| kept.iter().all(|&a| c.satisfied_by(a)))
        .collect();
    let mut index = [usize::MAX; 256];
    for (k, c) in candidates.iter().enumerate() {
        index[c.key()] = k;
    }
    let symmetries: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(k, &v)| k != v))
        .filter(|p| spec.require == Requirement::PEncoding || is_automorphism(&spec.function, p))
        .collect();

    let m = candidates.len();
    let (mut nodes, mut checked) = (0u64, 0u64);
    let mut chosen: Vec<Small> = Vec::with_capacity(spec.max_size);
    let mut image: Vec<usize> = Vec::with_capacity(spec.max_size);
    for size in 0..=spec.max_size.min(m) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            nodes += 1;
            let canonical = symmetries.iter().all(|p| {
                image.clear();
                image.extend(subset.iter().map(|&k| index[candidates[k].permuted(p).key()]));
                image.sort_unstable();
                image.as_slice() >= subset.as_slice()
            });
            if canonical {
                checked += 1;
                chosen.clear();
                chosen.extend(subset.iter().map(|&k| candidates[k]));
                if meets(&chosen, n, target, spec.require) {
                    let formula = Formula::new(chosen.iter().map(|c| c.to_clause(n)));
                    let inputs = (1..=n as u32).map(Var::new).collect();
                    let witness =
                        Encoding::new(formula, inputs, Default::default()).expect("inputs cover every variable");
                    return Ok(SearchResult {
                        outcome: SearchOutcome::Found { size, witness },
                        nodes,
                        checked,
                        candidates: m,
                        certified: size <= CERTIFIED_SIZE,
                    });
                }
            }
            if !next_colex(&mut subset, m) {
                break;
            }
        }
    }
    Ok(SearchResult {
        outcome: SearchOutcome::NoneWithinBudget {
            max_size: spec.max_size,
        },
        nodes,
        checked,
        candidates: m,
        certified: false,
    })
}
