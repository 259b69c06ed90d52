//! Semantic queries answered by complete search: satisfiability, model
//! enumeration, implicates and prime reduction.
//!
//! Satisfiability is decided by a small backtracking search with unit
//! propagation; it is exact, just not clever. Two caps keep it at desk
//! scale: [`Limits::enumeration`] bounds anything that walks a truth table or
//! lists every model, [`Limits::search`] bounds the variable count handed to
//! the backtracking search.

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::propagation::Propagator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticError {
    #[error("{what} needs {vars} variables, limit is {limit}")]
    TooLarge {
        what: &'static str,
        vars: usize,
        limit: usize,
    },
    #[error("formula is unsatisfiable")]
    Unsatisfiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum variable count for truth tables and model enumeration.
    pub enumeration: usize,
    /// Maximum variable count for backtracking satisfiability checks.
    pub search: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 24,
            search: 256,
        }
    }
}

impl Limits {
    pub(crate) fn check_enumeration(&self, what: &'static str, vars: usize) -> Result<(), SemanticError> {
        if vars > self.enumeration {
            return Err(SemanticError::TooLarge {
                what,
                vars,
                limit: self.enumeration,
            });
        }
        Ok(())
    }

    pub(crate) fn check_search(&self, what: &'static str, vars: usize) -> Result<(), SemanticError> {
        if vars > self.search {
            return Err(SemanticError::TooLarge {
                what,
                vars,
                limit: self.search,
            });
        }
        Ok(())
    }
}

fn var_count(formula: &Formula, extra: impl IntoIterator<Item = Lit>) -> usize {
    formula
        .max_var()
        .map_or(0, Var::index)
        .max(extra.into_iter().map(|l| l.var().index()).max().unwrap_or(0))
}

fn branch_literal(p: &Propagator<'_>) -> Option<Lit> {
    'clauses: for clause in p.formula() {
        let mut open = None;
        for &l in clause {
            match p.value(l) {
                Some(true) => continue 'clauses,
                Some(false) => {}
                None => {
                    if open.is_none() {
                        open = Some(l);
                    }
                }
            }
        }
        if open.is_some() {
            return open;
        }
    }
    None
}

/// Backtracking search from the propagator's current state. On success the
/// satisfying partial assignment is left on the trail.
pub(crate) fn search(p: &mut Propagator<'_>) -> bool {
    if !p.propagate() {
        return false;
    }
    let Some(lit) = branch_literal(p) else {
        return true;
    };
    let mark = p.mark();
    p.assume(lit);
    if search(p) {
        return true;
    }
    p.undo(mark);
    p.assume(!lit);
    search(p)
}

/// Satisfiability of `φ ∧ assumptions`; returns a model over `1..=V` when one
/// exists (variables the search left open are set to false).
pub fn find_model(formula: &Formula, assumptions: &[Lit], limits: &Limits) -> Result<Option<Vec<bool>>, SemanticError> {
    let vars = var_count(formula, assumptions.iter().copied());
    limits.check_search("satisfiability check", vars)?;
    let mut p = Propagator::with_vars(formula, vars);
    for &l in assumptions {
        if !p.assume(l) {
            return Ok(None);
        }
    }
    if !p.assert_units() || !search(&mut p) {
        return Ok(None);
    }
    let mut model = vec![false; vars + 1];
    for &l in p.trail() {
        model[l.var().index()] = l.is_positive();
    }
    Ok(Some(model))
}

pub fn is_satisfiable(formula: &Formula, assumptions: &[Lit], limits: &Limits) -> Result<bool, SemanticError> {
    Ok(find_model(formula, assumptions, limits)?.is_some())
}

/// Every model of `φ` over the variables `1..=num_vars` (at least the
/// formula's own), as bitmasks with bit `v - 1` holding variable `v`.
/// Models are listed in increasing bitmask order.
pub fn models(formula: &Formula, num_vars: usize, limits: &Limits) -> Result<Vec<u64>, SemanticError> {
    let vars = var_count(formula, []).max(num_vars);
    limits.check_enumeration("model enumeration", vars)?;
    if vars > 63 {
        return Err(SemanticError::TooLarge {
            what: "model enumeration",
            vars,
            limit: 63,
        });
    }
    let mut p = Propagator::with_vars(formula, vars);
    let mut out = Vec::new();
    if p.assert_units() {
        collect_models(&mut p, 1, vars, &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

fn collect_models(p: &mut Propagator<'_>, next: usize, vars: usize, out: &mut Vec<u64>) {
    if !p.propagate() {
        return;
    }
    let mut v = next;
    while v <= vars && p.value(Var::new(v as u32).pos()).is_some() {
        v += 1;
    }
    if v > vars {
        let mut mask = 0u64;
        for &l in p.trail() {
            if l.is_positive() {
                mask |= 1 << (l.var().index() - 1);
            }
        }
        out.push(mask);
        return;
    }
    for lit in [Var::new(v as u32).neg(), Var::new(v as u32).pos()] {
        let mark = p.mark();
        p.assume(lit);
        collect_models(p, v + 1, vars, out);
        p.undo(mark);
    }
}

/// `φ ⊨ c`.
pub fn is_implicate(formula: &Formula, clause: &Clause, limits: &Limits) -> Result<bool, SemanticError> {
    let negated: Vec<Lit> = clause.iter().map(|&l| !l).collect();
    Ok(!is_satisfiable(formula, &negated, limits)?)
}

/// Whether `clause` is a prime implicate of `φ`.
pub fn is_prime_implicate(formula: &Formula, clause: &Clause, limits: &Limits) -> Result<bool, SemanticError> {
    if !is_implicate(formula, clause, limits)? {
        return Ok(false);
    }
    for &l in clause {
        if is_implicate(formula, &clause.without(l), limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Clauses longer than this fall back from the ordered subset scan to greedy
/// literal dropping in [`prime_subclause`].
const ORDERED_SCAN_MAX_LEN: usize = 16;

/// A prime implicate of `φ` contained in the implicate `clause`: the smallest
/// one in canonical clause order when the clause has at most 16 literals,
/// otherwise the result of dropping literals greedily in literal order.
pub fn prime_subclause(formula: &Formula, clause: &Clause, limits: &Limits) -> Result<Clause, SemanticError> {
    let droppable: Vec<bool> = clause
        .iter()
        .map(|&l| is_implicate(formula, &clause.without(l), limits))
        .collect::<Result<_, _>>()?;
    if !droppable.contains(&true) {
        return Ok(clause.clone());
    }
    let lits = clause.lits();
    if lits.len() > ORDERED_SCAN_MAX_LEN {
        let mut current = clause.clone();
        for &l in lits {
            let smaller = current.without(l);
            if is_implicate(formula, &smaller, limits)? {
                current = smaller;
            }
        }
        return Ok(current);
    }
    for k in 0..lits.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let candidate = Clause::new(idx.iter().map(|&i| lits[i])).expect("subset of a clause");
            if is_implicate(formula, &candidate, limits)? {
                return Ok(candidate);
            }
            if !next_combination(&mut idx, lits.len()) {
                break;
            }
        }
    }
    Ok(clause.clone())
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; `false` once exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Replaces every clause by a prime implicate it contains.
pub fn prime_reduce(formula: &Formula, limits: &Limits) -> Result<Formula, SemanticError> {
    if !is_satisfiable(formula, &[], limits)? {
        return Err(SemanticError::Unsatisfiable);
    }
    formula.iter().map(|c| prime_subclause(formula, c, limits)).collect()
}

/// Whether two formulas have the same models over `1..=num_vars`.
pub fn equivalent(a: &Formula, b: &Formula, num_vars: usize, limits: &Limits) -> Result<bool, SemanticError> {
    Ok(models(a, num_vars, limits)? == models(b, num_vars, limits)?)
}
