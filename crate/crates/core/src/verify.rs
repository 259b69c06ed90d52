//! Verification of encodings: the encoded function, P1/P2, propagation
//! completeness on inputs or on all variables, and primality.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{dp_eliminate, Clause, Encoding, Formula, Lit, PartialAssignment, Var};
use crate::propagation::Propagator;
use crate::semantics::{self, is_implicate, is_satisfiable, Limits, SemanticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Semantic(#[from] SemanticError),
    #[error("function has {expected} inputs but the encoding has {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("truth table for {n} inputs needs {} entries, got {got}", 1u64 << .n)]
    BadTable { n: usize, got: usize },
}

fn too_large(what: &'static str, vars: usize, limit: usize) -> VerifyError {
    VerifyError::Semantic(SemanticError::TooLarge { what, vars, limit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    Amo,
    Eo,
    Explicit,
}

/// A boolean function of `n` inputs. Assignments are bitmasks with bit
/// `i - 1` holding `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionSpec {
    pub kind: FunctionKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<bool>>,
}

impl FunctionSpec {
    pub fn amo(n: usize) -> FunctionSpec {
        FunctionSpec {
            kind: FunctionKind::Amo,
            n,
            table: None,
        }
    }

    pub fn eo(n: usize) -> FunctionSpec {
        FunctionSpec {
            kind: FunctionKind::Eo,
            n,
            table: None,
        }
    }

    pub fn explicit(n: usize, table: Vec<bool>) -> Result<FunctionSpec, VerifyError> {
        if n >= 64 || table.len() as u64 != 1u64 << n {
            return Err(VerifyError::BadTable { n, got: table.len() });
        }
        Ok(FunctionSpec {
            kind: FunctionKind::Explicit,
            n,
            table: Some(table),
        })
    }

    pub fn value(&self, alpha: u64) -> bool {
        match self.kind {
            FunctionKind::Amo => alpha.count_ones() <= 1,
            FunctionKind::Eo => alpha.count_ones() == 1,
            FunctionKind::Explicit => self.table.as_ref().expect("explicit table")[alpha as usize],
        }
    }

    /// Satisfying assignments in increasing order.
    pub fn models(&self) -> Vec<u64> {
        match self.kind {
            FunctionKind::Amo => std::iter::once(0).chain((0..self.n).map(|i| 1 << i)).collect(),
            FunctionKind::Eo => (0..self.n).map(|i| 1 << i).collect(),
            FunctionKind::Explicit => (0..1u64 << self.n).filter(|&a| self.value(a)).collect(),
        }
    }

    pub fn truth_table(&self) -> Vec<bool> {
        (0..1u64 << self.n).map(|a| self.value(a)).collect()
    }

    /// Pointwise equality, whatever the representation.
    pub fn same_function(&self, other: &FunctionSpec) -> bool {
        self.n == other.n && self.models() == other.models()
    }
}

/// Why a check failed. Every variant can be replayed on its own with
/// [`Witness::replay`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// P1 fails: `φ ∧ x_input` is unsatisfiable.
    Unsatisfiable { input: usize },
    /// P2 fails: unit propagation from `x_input` does not reach `¬x_other`.
    NotDerived { input: usize, other: usize },
    /// The assumptions entail `literal` but propagation derives neither it
    /// nor a conflict.
    MissedConsequence {
        assumptions: PartialAssignment,
        literal: Lit,
    },
    /// The assumptions are inconsistent with the function but propagation
    /// does not reach a conflict.
    MissedConflict { assumptions: PartialAssignment },
    /// The encoding disagrees with the function on this input assignment.
    WrongValue {
        assignment: Vec<bool>,
        encoded: bool,
        expected: bool,
    },
    /// `clause` is not prime: `implicate` is a strictly smaller implicate.
    NotPrime { clause: Clause, implicate: Clause },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Unsatisfiable { input } => write!(f, "φ ∧ x{input} is unsatisfiable"),
            Witness::NotDerived { input, other } => write!(f, "φ ∧ x{input} does not propagate ¬x{other}"),
            Witness::MissedConsequence { assumptions, literal } => {
                write!(f, "{assumptions} entails {literal} but propagation misses it")
            }
            Witness::MissedConflict { assumptions } => {
                write!(f, "{assumptions} is inconsistent but propagation finds no conflict")
            }
            Witness::WrongValue {
                assignment,
                encoded,
                expected,
            } => {
                let bits: String = assignment.iter().map(|&b| if b { '1' } else { '0' }).collect();
                write!(
                    f,
                    "inputs {bits}: encoding gives {}, function gives {}",
                    *encoded as u8, *expected as u8
                )
            }
            Witness::NotPrime { clause, implicate } => write!(f, "({clause}) contains the implicate ({implicate})"),
        }
    }
}

impl Witness {
    /// Re-runs the single failing check. `true` means the failure is
    /// reproduced.
    pub fn replay(&self, enc: &Encoding, limits: &Limits) -> Result<bool, VerifyError> {
        let phi = enc.formula();
        Ok(match self {
            Witness::Unsatisfiable { input } => !is_satisfiable(phi, &[enc.input(*input).pos()], limits)?,
            Witness::NotDerived { input, other } => {
                let mut p = Propagator::with_vars(phi, enc.num_vars());
                !p.run(&[enc.input(*input).pos()]) || p.value(enc.input(*other).neg()) != Some(true)
            }
            Witness::MissedConsequence { assumptions, literal } => {
                let mut p = Propagator::with_vars(phi, enc.num_vars());
                p.run(assumptions.lits()) && p.value(*literal) != Some(true)
            }
            Witness::MissedConflict { assumptions } => {
                let mut p = Propagator::with_vars(phi, enc.num_vars());
                p.run(assumptions.lits())
            }
            Witness::WrongValue {
                assignment, encoded, ..
            } => {
                let lits: Vec<Lit> = assignment
                    .iter()
                    .zip(enc.inputs())
                    .map(|(&b, &v)| Lit::new(v, b))
                    .collect();
                is_satisfiable(phi, &lits, limits)? == *encoded
            }
            Witness::NotPrime { clause, implicate } => {
                implicate.is_subset_of(clause) && implicate != clause && is_implicate(phi, implicate, limits)?
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PcReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Number of individual checks performed (assumption sets, indices or
    /// pairs, depending on the check).
    pub checked_count: u64,
}

impl PcReport {
    fn pass(checked_count: u64) -> PcReport {
        PcReport {
            verdict: true,
            witness: None,
            checked_count,
        }
    }

    fn fail(witness: Witness, checked_count: u64) -> PcReport {
        PcReport {
            verdict: false,
            witness: Some(witness),
            checked_count,
        }
    }
}

/// Truth table of the function encoded by `enc` over its inputs.
pub fn encoded_function(enc: &Encoding, limits: &Limits) -> Result<FunctionSpec, VerifyError> {
    let n = enc.n();
    if n > limits.enumeration.min(30) {
        return Err(too_large("truth table", n, limits.enumeration.min(30)));
    }
    let mut table = vec![false; 1 << n];
    if enc.num_vars() <= limits.search {
        let mut p = Propagator::with_vars(enc.formula(), enc.num_vars());
        if p.run(&[]) {
            fill_table(&mut p, enc.inputs(), 0, 0, &mut table);
        }
    } else {
        let projected = eliminate_auxiliaries(enc, limits)?;
        let mut p = Propagator::with_vars(&projected, enc.num_vars());
        if p.run(&[]) {
            fill_table(&mut p, enc.inputs(), 0, 0, &mut table);
        }
    }
    FunctionSpec::explicit(n, table)
}

fn fill_table(p: &mut Propagator<'_>, inputs: &[Var], k: usize, alpha: u64, table: &mut [bool]) {
    if !p.propagate() {
        return;
    }
    if k == inputs.len() {
        let mark = p.mark();
        table[alpha as usize] = semantics::search(p);
        p.undo(mark);
        return;
    }
    for value in [false, true] {
        let mark = p.mark();
        p.assume(Lit::new(inputs[k], value));
        fill_table(p, inputs, k + 1, alpha | (u64::from(value) << k), table);
        p.undo(mark);
    }
}

/// Maximum number of clauses tolerated while eliminating auxiliaries.
const ELIMINATION_BUDGET: usize = 20_000;

/// Projects the auxiliaries away by DP-elimination, fewest occurrences first.
fn eliminate_auxiliaries(enc: &Encoding, limits: &Limits) -> Result<Formula, VerifyError> {
    let mut phi = enc.formula().clone();
    let mut remaining: Vec<Var> = enc.auxiliaries().iter().copied().collect();
    while !remaining.is_empty() {
        let (k, _) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| (phi.occurrences(v), v))
            .expect("non-empty");
        let y = remaining.swap_remove(k);
        phi = dp_eliminate(&phi, y);
        if phi.len() > ELIMINATION_BUDGET {
            return Err(too_large("auxiliary elimination", enc.num_vars(), limits.search));
        }
    }
    Ok(phi)
}

fn check_arity(enc: &Encoding, f: &FunctionSpec) -> Result<(), VerifyError> {
    if enc.n() != f.n {
        return Err(VerifyError::ArityMismatch {
            expected: f.n,
            found: enc.n(),
        });
    }
    Ok(())
}

fn first_difference(enc: &Encoding, encoded: &FunctionSpec, f: &FunctionSpec) -> Option<Witness> {
    (0..1u64 << f.n)
        .find(|&a| encoded.value(a) != f.value(a))
        .map(|a| Witness::WrongValue {
            assignment: (0..f.n).map(|i| a >> i & 1 == 1).collect(),
            encoded: encoded.value(a),
            expected: f.value(a),
        })
        .filter(|_| enc.n() == f.n)
}

pub fn is_encoding_of(enc: &Encoding, f: &FunctionSpec, limits: &Limits) -> Result<bool, VerifyError> {
    check_arity(enc, f)?;
    Ok(encoded_function(enc, limits)?.same_function(f))
}

/// Like [`is_encoding_of`] but reports the first disagreeing assignment.
pub fn check_encoding(enc: &Encoding, f: &FunctionSpec, limits: &Limits) -> Result<PcReport, VerifyError> {
    check_arity(enc, f)?;
    let encoded = encoded_function(enc, limits)?;
    let checked = 1u64 << f.n;
    Ok(match first_difference(enc, &encoded, f) {
        Some(w) => PcReport::fail(w, checked),
        None => PcReport::pass(checked),
    })
}

/// P1: every `φ ∧ x_i` is satisfiable. P2: `φ ∧ x_i ⊢1 ¬x_j` for `i ≠ j`.
pub fn check_p_conditions(enc: &Encoding, limits: &Limits) -> Result<PcReport, VerifyError> {
    let n = enc.n();
    let mut checked = 0;
    for i in 1..=n {
        checked += 1;
        if !is_satisfiable(enc.formula(), &[enc.input(i).pos()], limits)? {
            return Ok(PcReport::fail(Witness::Unsatisfiable { input: i }, checked));
        }
    }
    let mut p = Propagator::with_vars(enc.formula(), enc.num_vars());
    for i in 1..=n {
        let ok = p.run(&[enc.input(i).pos()]);
        for j in (1..=n).filter(|&j| j != i) {
            checked += 1;
            if !ok || p.value(enc.input(j).neg()) != Some(true) {
                return Ok(PcReport::fail(Witness::NotDerived { input: i, other: j }, checked));
            }
        }
    }
    Ok(PcReport::pass(checked))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PcOptions {
    /// Largest input count accepted by the exhaustive input-level check.
    pub max_inputs: usize,
    /// Restrict the input-level sweep to single positive assumptions and,
    /// for EO, all-but-one negative assumptions. Off by default: the
    /// restriction relies on a property of AMO/EO rather than checking it.
    pub fast_path: bool,
}

impl Default for PcOptions {
    fn default() -> Self {
        PcOptions {
            max_inputs: 12,
            fast_path: false,
        }
    }
}

/// Largest variable count accepted by [`is_full_pc`].
pub const FULL_PC_MAX_VARS: usize = 16;

/// Assumption-set sweep in canonical order (size, then lexicographic).
struct Sweep<'a> {
    prop: Propagator<'a>,
    // Variables assumptions and consequences range over, sorted by id.
    vars: Vec<Var>,
    // Models of the target function as masks over positions in `vars`.
    models: Vec<u64>,
    // Skip literals already fixed by propagation; sound for locating the
    // first violation but the count no longer covers every set.
    prune: bool,
    checked: u64,
}

impl<'a> Sweep<'a> {
    fn run(&mut self) -> Option<Witness> {
        if !self.prop.run(&[]) {
            // φ is refuted by propagation alone; every assumption set conflicts.
            let m = self.vars.len() as u32;
            self.checked = 3u64.pow(m) - 1;
            return None;
        }
        let models = self.models.clone();
        for size in 1..=self.vars.len() {
            let mut prefix = Vec::new();
            if let Some(w) = self.visit(0, size, &mut prefix, &models) {
                return Some(w);
            }
        }
        None
    }

    fn visit(&mut self, start: usize, remaining: usize, prefix: &mut Vec<Lit>, models: &[u64]) -> Option<Witness> {
        if remaining == 0 {
            self.checked += 1;
            return self.check(prefix, models);
        }
        if self.prune && self.prop.is_conflict() {
            return None;
        }
        for pos in start..=self.vars.len() - remaining {
            for value in [true, false] {
                let lit = Lit::new(self.vars[pos], value);
                if self.prune && self.prop.value(lit).is_some() {
                    continue;
                }
                let mark = self.prop.mark();
                self.prop.assume(lit);
                self.prop.propagate();
                let narrowed: Vec<u64> = models
                    .iter()
                    .copied()
                    .filter(|&m| (m >> pos & 1 == 1) == value)
                    .collect();
                prefix.push(lit);
                let found = self.visit(pos + 1, remaining - 1, prefix, &narrowed);
                prefix.pop();
                self.prop.undo(mark);
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn check(&self, prefix: &[Lit], models: &[u64]) -> Option<Witness> {
        if self.prop.is_conflict() {
            return None;
        }
        let assumptions = || PartialAssignment::new(prefix.iter().copied()).expect("prefix is consistent");
        if models.is_empty() {
            return Some(Witness::MissedConflict {
                assumptions: assumptions(),
            });
        }
        let all = models.iter().fold(u64::MAX, |acc, &m| acc & m);
        let any = models.iter().fold(0, |acc, &m| acc | m);
        for (pos, &v) in self.vars.iter().enumerate() {
            let entailed = if all >> pos & 1 == 1 {
                v.pos()
            } else if any >> pos & 1 == 0 {
                v.neg()
            } else {
                continue;
            };
            if self.prop.value(entailed) != Some(true) {
                return Some(Witness::MissedConsequence {
                    assumptions: assumptions(),
                    literal: entailed,
                });
            }
        }
        None
    }
}

/// Propagation completeness with respect to `f`, assumptions and
/// consequences ranging over input literals. Also fails when `enc` does not
/// encode `f` at all.
pub fn is_input_pc(enc: &Encoding, f: &FunctionSpec, limits: &Limits) -> Result<PcReport, VerifyError> {
    is_input_pc_with(enc, f, limits, &PcOptions::default())
}

pub fn is_input_pc_with(
    enc: &Encoding,
    f: &FunctionSpec,
    limits: &Limits,
    options: &PcOptions,
) -> Result<PcReport, VerifyError> {
    check_arity(enc, f)?;
    let n = enc.n();
    if n > options.max_inputs {
        return Err(too_large(
            "exhaustive propagation-completeness check",
            n,
            options.max_inputs,
        ));
    }
    let encoded = encoded_function(enc, limits)?;
    if let Some(w) = first_difference(enc, &encoded, f) {
        return Ok(PcReport::fail(w, 0));
    }
    if options.fast_path {
        return Ok(fast_path(enc, f));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| enc.inputs()[i]);
    let models = f
        .models()
        .into_iter()
        .map(|m| {
            order
                .iter()
                .enumerate()
                .fold(0u64, |acc, (pos, &i)| acc | (m >> i & 1) << pos)
        })
        .collect();
    let mut sweep = Sweep {
        prop: Propagator::with_vars(enc.formula(), enc.num_vars()),
        vars: order.iter().map(|&i| enc.inputs()[i]).collect(),
        models,
        prune: false,
        checked: 0,
    };
    let witness = sweep.run();
    Ok(match witness {
        Some(w) => PcReport::fail(w, sweep.checked),
        None => PcReport::pass(sweep.checked),
    })
}

fn fast_path(enc: &Encoding, f: &FunctionSpec) -> PcReport {
    let n = enc.n();
    let mut sets: Vec<Vec<Lit>> = (1..=n).map(|i| vec![enc.input(i).pos()]).collect();
    if f.kind == FunctionKind::Eo {
        for keep in 1..=n {
            sets.push((1..=n).filter(|&j| j != keep).map(|j| enc.input(j).neg()).collect());
        }
    }
    let models = f.models();
    let mut p = Propagator::with_vars(enc.formula(), enc.num_vars());
    let mut checked = 0;
    for set in sets {
        checked += 1;
        if !p.run(&set) {
            continue;
        }
        let holds = |m: u64, l: Lit| {
            let i = enc.input_index(l.var()).expect("input literal") - 1;
            (m >> i & 1 == 1) == l.is_positive()
        };
        let consistent: Vec<u64> = models
            .iter()
            .copied()
            .filter(|&m| set.iter().all(|&l| holds(m, l)))
            .collect();
        let assumptions = PartialAssignment::new(set.iter().copied()).expect("consistent");
        if consistent.is_empty() {
            return PcReport::fail(Witness::MissedConflict { assumptions }, checked);
        }
        for &v in enc.inputs() {
            for lit in [v.pos(), v.neg()] {
                if consistent.iter().all(|&m| holds(m, lit)) && p.value(lit) != Some(true) {
                    return PcReport::fail(
                        Witness::MissedConsequence {
                            assumptions,
                            literal: lit,
                        },
                        checked,
                    );
                }
            }
        }
    }
    PcReport::pass(checked)
}

/// Propagation completeness with assumptions and consequences over every
/// variable of `φ`. Assumption sets that add a literal already fixed by
/// propagation are skipped, since they behave exactly like a smaller set.
pub fn is_full_pc(formula: &Formula, limits: &Limits) -> Result<PcReport, VerifyError> {
    let num_vars = formula.max_var().map_or(0, Var::index);
    if num_vars > FULL_PC_MAX_VARS {
        return Err(too_large(
            "full propagation-completeness check",
            num_vars,
            FULL_PC_MAX_VARS,
        ));
    }
    let models = semantics::models(formula, num_vars, limits)?;
    let mut sweep = Sweep {
        prop: Propagator::with_vars(formula, num_vars),
        vars: (1..=num_vars as u32).map(Var::new).collect(),
        models,
        prune: true,
        checked: 0,
    };
    let witness = sweep.run();
    Ok(match witness {
        Some(w) => PcReport::fail(w, sweep.checked),
        None => PcReport::pass(sweep.checked),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionClass {
    Amo,
    Eo,
    Neither,
}

pub fn classify(enc: &Encoding, limits: &Limits) -> Result<FunctionClass, VerifyError> {
    let f = encoded_function(enc, limits)?;
    Ok(if f.same_function(&FunctionSpec::amo(enc.n())) {
        FunctionClass::Amo
    } else if f.same_function(&FunctionSpec::eo(enc.n())) {
        FunctionClass::Eo
    } else {
        FunctionClass::Neither
    })
}

/// The first clause (in canonical order) that is not a prime implicate,
/// with the prime implicate it contains.
pub fn first_non_prime(formula: &Formula, limits: &Limits) -> Result<Option<(Clause, Clause)>, VerifyError> {
    for clause in formula {
        let prime = semantics::prime_subclause(formula, clause, limits)?;
        if prime != *clause {
            return Ok(Some((clause.clone(), prime)));
        }
    }
    Ok(None)
}

pub fn is_prime(formula: &Formula, limits: &Limits) -> Result<bool, VerifyError> {
    for clause in formula {
        for &l in clause {
            if is_implicate(formula, &clause.without(l), limits)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_prime(formula: &Formula, limits: &Limits) -> Result<PcReport, VerifyError> {
    let checked = formula.len() as u64;
    Ok(match first_non_prime(formula, limits)? {
        Some((clause, implicate)) => PcReport::fail(Witness::NotPrime { clause, implicate }, checked),
        None => PcReport::pass(checked),
    })
}

pub fn unit_implicates(formula: &Formula, limits: &Limits) -> Result<Vec<Lit>, VerifyError> {
    let mut out = Vec::new();
    for v in formula.vars() {
        for lit in [v.pos(), v.neg()] {
            if is_implicate(formula, &Clause::new([lit]).expect("unit"), limits)? {
                out.push(lit);
            }
        }
    }
    Ok(out)
}

/// An auxiliary with at most four occurrences: eliminating it by
/// DP-elimination does not increase the size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpAdvisory {
    pub variable: Var,
    pub occurrences: usize,
    pub size_before: usize,
    pub size_after: usize,
}

pub fn dp_advisories(enc: &Encoding) -> Vec<DpAdvisory> {
    enc.auxiliaries()
        .iter()
        .filter_map(|&y| {
            let occurrences = enc.formula().occurrences(y);
            (1..=4).contains(&occurrences).then(|| DpAdvisory {
                variable: y,
                occurrences,
                size_before: enc.size(),
                size_after: dp_eliminate(enc.formula(), y).len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{generate, EncodingKind};

    fn lits(v: &[i32]) -> Vec<Lit> {
        v.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn encoded_function_examples() {
        let e = generate(&EncodingKind::SequentialAmo { n: 4 }).unwrap();
        let f = encoded_function(&e, &limits()).unwrap();
        assert_eq!(f.models().len(), 5);
        assert!(f.same_function(&FunctionSpec::amo(4)));
        let e = Encoding::with_leading_inputs(Formula::from_dimacs(&[&[1]]), 1).unwrap();
        assert_eq!(
            encoded_function(&e, &limits()).unwrap().truth_table(),
            vec![false, true]
        );
    }

    #[test]
    fn elimination_path_agrees_with_search() {
        let e = generate(&EncodingKind::ProductAmo { n: 9 }).unwrap();
        let tight = Limits {
            enumeration: 24,
            search: 9,
        };
        assert!(encoded_function(&e, &tight)
            .unwrap()
            .same_function(&FunctionSpec::amo(9)));
    }

    #[test]
    fn p_condition_witness() {
        let phi = Formula::from_dimacs(&[&[-1, -2], &[-1, -3]]);
        let e = Encoding::with_leading_inputs(phi, 3).unwrap();
        let r = check_p_conditions(&e, &limits()).unwrap();
        assert_eq!(r.witness, Some(Witness::NotDerived { input: 2, other: 3 }));
        assert!(r.witness.unwrap().replay(&e, &limits()).unwrap());
    }

    #[test]
    fn nonpc_witness() {
        let e = generate(&EncodingKind::NonpcExone { n: 3 }).unwrap();
        let r = is_input_pc(&e, &FunctionSpec::eo(3), &limits()).unwrap();
        assert!(!r.verdict);
        let expected = Witness::MissedConsequence {
            assumptions: PartialAssignment::new(lits(&[-1, -2])).unwrap(),
            literal: Lit::from_dimacs(3).unwrap(),
        };
        assert_eq!(r.witness, Some(expected));
    }

    #[test]
    fn input_pc_counts_every_set() {
        let e = generate(&EncodingKind::PairwiseAmo { n: 4 }).unwrap();
        let r = is_input_pc(&e, &FunctionSpec::amo(4), &limits()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.checked_count, 80);
    }

    #[test]
    fn input_pc_rejects_wrong_function() {
        let e = generate(&EncodingKind::SequentialAmo { n: 4 }).unwrap();
        let r = is_input_pc(&e, &FunctionSpec::eo(4), &limits()).unwrap();
        assert!(matches!(r.witness, Some(Witness::WrongValue { expected: false, .. })));
        assert!(r.witness.unwrap().replay(&e, &limits()).unwrap());
    }

    #[test]
    fn full_pc_examples() {
        let phi = Formula::from_dimacs(&[&[-1, 2, 3], &[-1, 2, -3]]);
        let r = is_full_pc(&phi, &limits()).unwrap();
        let expected = Witness::MissedConsequence {
            assumptions: PartialAssignment::new(lits(&[1])).unwrap(),
            literal: Lit::from_dimacs(2).unwrap(),
        };
        assert_eq!(r.witness, Some(expected));
        assert!(is_full_pc(&Formula::from_dimacs(&[&[1]]), &limits()).unwrap().verdict);
    }

    #[test]
    fn classify_examples() {
        let inner = Box::new(EncodingKind::SequentialAmo { n: 4 });
        let e = generate(&EncodingKind::AmoWrap { inner }).unwrap();
        assert_eq!(classify(&e, &limits()).unwrap(), FunctionClass::Amo);
        let e = Encoding::with_leading_inputs(Formula::from_dimacs(&[&[1, 2]]), 2).unwrap();
        assert_eq!(classify(&e, &limits()).unwrap(), FunctionClass::Neither);
    }

    #[test]
    fn prime_and_units() {
        let phi = Formula::from_dimacs(&[&[-1, -2], &[-1, -3], &[-2, -3], &[-1, -2, -3]]);
        assert!(!is_prime(&phi, &limits()).unwrap());
        let phi = Formula::from_dimacs(&[&[1], &[1, 2]]);
        assert_eq!(unit_implicates(&phi, &limits()).unwrap(), lits(&[1]));
    }

    #[test]
    fn advisories_for_low_occurrence_auxiliaries() {
        let e = generate(&EncodingKind::SequentialAmo { n: 4 }).unwrap();
        let adv = dp_advisories(&e);
        assert_eq!(adv.len(), 1);
        assert_eq!(adv[0].occurrences, 4);
        assert_eq!(adv[0].size_after, 6);
    }
}
