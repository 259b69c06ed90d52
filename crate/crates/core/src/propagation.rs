//! Unit propagation (`⊢1`) with derivation traces.
//!
//! [`up_closure`] is the one-shot entry point. [`Propagator`] is the reusable
//! engine behind it: it keeps occurrence lists for a fixed formula and can
//! undo assignments back to a mark, which is what the exhaustive checkers
//! and the backtracking satisfiability search need.

use std::fmt;

use serde::Serialize;

use crate::cnf::{Clause, Formula, Lit, PartialAssignment, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpKind {
    Closure,
    Conflict,
}

/// One unit-resolution step: `clause` had all but one literal falsified and
/// produced `literal`, or had every literal falsified (`literal == None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub clause: Clause,
    pub literal: Option<Lit>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.literal {
            Some(l) => write!(f, "{} -> {}", self.clause, l),
            None => write!(f, "{} -> ⊥", self.clause),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpOutcome {
    pub kind: UpKind,
    /// Derived literals in canonical order, assumptions included. On
    /// conflict these are the literals derived before the falsified clause
    /// was found.
    pub derived: Vec<Lit>,
    pub trace: Vec<TraceStep>,
}

impl UpOutcome {
    pub fn is_conflict(&self) -> bool {
        self.kind == UpKind::Conflict
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.derived.binary_search(&lit).is_ok()
    }
}

/// Renders a trace one step per line as `clause -> literal`.
pub fn render_trace(trace: &[TraceStep]) -> String {
    let mut out = String::new();
    for step in trace {
        out.push_str(&step.to_string());
        out.push('\n');
    }
    out
}

/// A point in the assignment history of a [`Propagator`].
#[derive(Clone, Copy, Debug)]
pub struct Mark {
    trail: usize,
    conflict: Option<u32>,
}

const UNASSIGNED: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

/// Reusable counter-based unit propagation over a fixed formula.
///
/// Literals are assigned in FIFO order; each processed literal bumps the
/// false-literal counter of the clauses containing its complement and a
/// clause is inspected once at most one of its literals is left.
pub struct Propagator<'a> {
    formula: &'a Formula,
    // Clauses containing the complement of the literal with this code.
    falsified_by: Vec<Vec<u32>>,
    false_count: Vec<u32>,
    value: Vec<u8>,
    trail: Vec<Lit>,
    reasons: Vec<Option<u32>>,
    head: usize,
    conflict: Option<u32>,
    units: Vec<u32>,
}

impl<'a> Propagator<'a> {
    pub fn new(formula: &'a Formula) -> Self {
        Self::with_vars(formula, 0)
    }

    /// Sizes the tables for at least `num_vars` variables, so assumptions on
    /// variables outside the formula are accepted.
    pub fn with_vars(formula: &'a Formula, num_vars: usize) -> Self {
        let max_var = formula.max_var().map_or(0, Var::index).max(num_vars);
        let mut falsified_by = vec![Vec::new(); 2 * (max_var + 1)];
        let mut units = Vec::new();
        for (k, clause) in formula.iter().enumerate() {
            for &l in clause {
                falsified_by[(!l).code()].push(k as u32);
            }
            if clause.len() <= 1 {
                units.push(k as u32);
            }
        }
        Propagator {
            formula,
            falsified_by,
            false_count: vec![0; formula.len()],
            value: vec![UNASSIGNED; max_var + 1],
            trail: Vec::new(),
            reasons: Vec::new(),
            head: 0,
            conflict: None,
            units,
        }
    }

    pub fn formula(&self) -> &'a Formula {
        self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.value.len() - 1
    }

    pub fn value(&self, lit: Lit) -> Option<bool> {
        match self.value.get(lit.var().index()).copied().unwrap_or(UNASSIGNED) {
            UNASSIGNED => None,
            v => Some((v == TRUE) == lit.is_positive()),
        }
    }

    pub fn is_conflict(&self) -> bool {
        self.conflict.is_some()
    }

    /// Literals assigned so far, in assignment order.
    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    /// Snapshot to return to with [`Propagator::undo`].
    pub fn mark(&self) -> Mark {
        Mark {
            trail: self.trail.len(),
            conflict: self.conflict,
        }
    }

    /// Unassigns everything assigned after `mark` and restores the conflict
    /// state it recorded. Marks must be taken after a complete propagation.
    pub fn undo(&mut self, mark: Mark) {
        self.truncate(mark.trail);
        self.conflict = mark.conflict;
    }

    fn truncate(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let lit = self.trail.pop().expect("trail is non-empty");
            self.reasons.pop();
            if self.trail.len() < self.head {
                for &c in &self.falsified_by[lit.code()] {
                    self.false_count[c as usize] -= 1;
                }
            }
            self.value[lit.var().index()] = UNASSIGNED;
        }
        self.head = self.head.min(mark);
    }

    pub fn reset(&mut self) {
        self.truncate(0);
        self.conflict = None;
    }

    /// Queues `lit` as an assumption. Returns `false` (and records a
    /// conflict) if its complement is already assigned.
    pub fn assume(&mut self, lit: Lit) -> bool {
        self.enqueue(lit, None)
    }

    fn enqueue(&mut self, lit: Lit, reason: Option<u32>) -> bool {
        match self.value(lit) {
            Some(true) => true,
            Some(false) => {
                if self.conflict.is_none() {
                    self.conflict = reason.or(Some(u32::MAX));
                }
                false
            }
            None => {
                self.value[lit.var().index()] = if lit.is_positive() { TRUE } else { FALSE };
                self.trail.push(lit);
                self.reasons.push(reason);
                true
            }
        }
    }

    /// Fires the formula's unit clauses (and detects an empty clause).
    /// Returns `false` on conflict.
    pub fn assert_units(&mut self) -> bool {
        for k in 0..self.units.len() {
            let c = self.units[k];
            match self.formula.clauses()[c as usize].lits().first() {
                None => {
                    self.conflict = Some(c);
                    return false;
                }
                Some(&l) => {
                    if !self.enqueue(l, Some(c)) {
                        self.conflict = Some(c);
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Runs unit propagation to a fixed point. Returns `false` on conflict.
    pub fn propagate(&mut self) -> bool {
        if self.conflict.is_some() {
            return false;
        }
        while self.head < self.trail.len() {
            let lit = self.trail[self.head];
            self.head += 1;
            for k in 0..self.falsified_by[lit.code()].len() {
                let c = self.falsified_by[lit.code()][k] as usize;
                self.false_count[c] += 1;
                let clause = &self.formula.clauses()[c];
                if (self.false_count[c] as usize) + 1 < clause.len() {
                    continue;
                }
                let mut open = None;
                let mut satisfied = false;
                for &l in clause {
                    match self.value(l) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => open = Some(l),
                    }
                }
                if satisfied {
                    continue;
                }
                match open {
                    Some(l) => {
                        self.enqueue(l, Some(c as u32));
                    }
                    None => {
                        // The remaining counters are finished so undo stays
                        // consistent.
                        for &rest in &self.falsified_by[lit.code()][k + 1..] {
                            self.false_count[rest as usize] += 1;
                        }
                        self.conflict = Some(c as u32);
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Assumes every literal of `assumptions` plus the formula's units and
    /// propagates, starting from a clean state.
    pub fn run(&mut self, assumptions: &[Lit]) -> bool {
        self.reset();
        for &l in assumptions {
            if !self.assume(l) {
                return false;
            }
        }
        if !self.assert_units() {
            return false;
        }
        self.propagate()
    }

    /// Builds the public outcome for the current state.
    pub fn outcome(&self) -> UpOutcome {
        let mut trace: Vec<TraceStep> = self
            .reasons
            .iter()
            .zip(&self.trail)
            .filter_map(|(r, &l)| {
                r.map(|c| TraceStep {
                    clause: self.formula.clauses()[c as usize].clone(),
                    literal: Some(l),
                })
            })
            .collect();
        if let Some(c) = self.conflict {
            if let Some(clause) = self.formula.clauses().get(c as usize) {
                trace.push(TraceStep {
                    clause: clause.clone(),
                    literal: None,
                });
            }
        }
        let mut derived = self.trail.clone();
        derived.sort_unstable();
        UpOutcome {
            kind: if self.is_conflict() {
                UpKind::Conflict
            } else {
                UpKind::Closure
            },
            derived,
            trace,
        }
    }
}

/// Least fixed point of unit resolution on `φ ∧ assumptions`.
pub fn up_closure(formula: &Formula, assumptions: &PartialAssignment) -> UpOutcome {
    let mut p = Propagator::with_vars(formula, max_var(assumptions));
    p.run(assumptions.lits());
    p.outcome()
}

/// `φ ∧ assumptions ⊢1 h`: `h` is derived or propagation hits a conflict.
pub fn derives(formula: &Formula, assumptions: &PartialAssignment, h: Lit) -> bool {
    let mut p = Propagator::with_vars(formula, max_var(assumptions).max(h.var().index()));
    !p.run(assumptions.lits()) || p.value(h) == Some(true)
}

fn max_var(rho: &PartialAssignment) -> usize {
    rho.lits().iter().map(|l| l.var().index()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(v: &[i32]) -> Vec<Lit> {
        v.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect()
    }

    fn rho(v: &[i32]) -> PartialAssignment {
        PartialAssignment::new(lits(v)).unwrap()
    }

    fn pairwise3() -> Formula {
        Formula::from_dimacs(&[&[-1, -2], &[-1, -3], &[-2, -3]])
    }

    #[test]
    fn closure_of_pairwise() {
        let out = up_closure(&pairwise3(), &rho(&[1]));
        assert_eq!(out.kind, UpKind::Closure);
        assert_eq!(out.derived, lits(&[1, -2, -3]));
        assert_eq!(out.trace.len(), 2);
    }

    #[test]
    fn conflict_on_falsified_clause() {
        let phi = Formula::from_dimacs(&[&[-1, -2]]);
        let out = up_closure(&phi, &rho(&[1, 2]));
        assert!(out.is_conflict());
        assert_eq!(out.trace.last().unwrap().literal, None);
        assert!(derives(&phi, &rho(&[1, 2]), Lit::from_dimacs(3).unwrap()));
    }

    #[test]
    fn negative_assumption_derives_nothing_in_pairwise() {
        assert!(!derives(&pairwise3(), &rho(&[-1]), Lit::from_dimacs(-2).unwrap()));
    }

    #[test]
    fn unit_clauses_fire_without_assumptions() {
        let phi = Formula::from_dimacs(&[&[1], &[-1, 2]]);
        let out = up_closure(&phi, &PartialAssignment::empty());
        assert_eq!(out.derived, lits(&[1, 2]));
        assert_eq!(render_trace(&out.trace), "1 -> 1\n-1 2 -> 2\n");
    }

    #[test]
    fn empty_clause_is_an_immediate_conflict() {
        let phi = Formula::new([Clause::bottom()]);
        assert!(up_closure(&phi, &PartialAssignment::empty()).is_conflict());
    }

    #[test]
    fn undo_restores_counters() {
        let phi = Formula::from_dimacs(&[&[-1, 2], &[-2, 3], &[-3, -1]]);
        let mut p = Propagator::new(&phi);
        assert!(p.run(&[]));
        let m = p.mark();
        p.assume(Lit::from_dimacs(1).unwrap());
        assert!(!p.propagate());
        p.undo(m);
        p.assume(Lit::from_dimacs(2).unwrap());
        assert!(p.propagate());
        assert_eq!(p.value(Lit::from_dimacs(3).unwrap()), Some(true));
        assert_eq!(p.value(Lit::from_dimacs(1).unwrap()), Some(false));
    }
}
