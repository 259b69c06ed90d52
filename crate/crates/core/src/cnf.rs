//! Literals, clauses, formulas and encodings, plus the syntactic
//! operations on them: resolution, substitution, partial assignment and
//! DP-elimination.
//!
//! Everything here has set semantics. A [`Clause`] is a sorted,
//! duplicate-free list of literals without complementary pairs and a
//! [`Formula`] is a sorted, duplicate-free list of clauses. The sort orders
//! are the canonical ones used for serialization and tie-breaking:
//! literals by `(variable, positive < negative)`, clauses by length and then
//! lexicographically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause contains the complementary pair {0} / {}", !*.0)]
    Tautological(Lit),
    #[error("clauses have {0} clashing literals, resolution needs exactly one")]
    NotResolvable(usize),
    #[error("partial assignment assigns both {0} and {}", !*.0)]
    InconsistentAssignment(Lit),
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),
}

/// A propositional variable, identified by a positive integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// If `id` is zero.
    pub fn new(id: u32) -> Var {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let id = u32::deserialize(d)?;
        if id == 0 {
            return Err(serde::de::Error::custom("variable ids start at 1"));
        }
        Ok(Var(id))
    }
}

/// A literal. The derived order is `(variable, positive < negative)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    /// Parses a signed DIMACS integer; `None` for zero.
    pub fn from_dimacs(value: i32) -> Option<Lit> {
        if value == 0 {
            return None;
        }
        Some(Lit::new(Var(value.unsigned_abs()), value > 0))
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn is_negative(self) -> bool {
        !self.is_positive()
    }

    /// Dense code `2 * var + sign`, handy for literal-indexed tables.
    pub fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i32(self.to_dimacs())
    }
}

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i32::deserialize(d)?;
        Lit::from_dimacs(v).ok_or_else(|| serde::de::Error::custom("literal 0"))
    }
}

/// A clause: a set of literals without complementary pairs. The empty clause
/// is the contradiction ⊥.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Builds a clause, collapsing duplicate literals.
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, CnfError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(CnfError::Tautological(pair[0]));
            }
        }
        Ok(Clause(lits))
    }

    /// Like [`Clause::new`], but maps a tautology to `None` instead of an error.
    pub fn non_tautological<I: IntoIterator<Item = Lit>>(lits: I) -> Option<Clause> {
        Clause::new(lits).ok()
    }

    pub fn from_dimacs(values: &[i32]) -> Result<Clause, CnfError> {
        Clause::new(values.iter().filter_map(|&v| Lit::from_dimacs(v)))
    }

    pub fn bottom() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.contains(var.pos()) || self.contains(var.neg())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Lit> {
        self.0.iter()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.0.iter().all(|&l| other.contains(l))
    }

    pub fn without(&self, lit: Lit) -> Clause {
        Clause(self.0.iter().copied().filter(|&l| l != lit).collect())
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "⊥");
        }
        for (k, lit) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Lit;
    type IntoIter = std::slice::Iter<'a, Lit>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A CNF formula as a set of clauses, kept in canonical clause order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Formula(Vec<Clause>);

impl Formula {
    pub fn new<I: IntoIterator<Item = Clause>>(clauses: I) -> Formula {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        Formula(clauses)
    }

    /// Convenience constructor from DIMACS-style integer lists.
    ///
    /// # Panics
    ///
    /// If any of the lists is tautological.
    pub fn from_dimacs(clauses: &[&[i32]]) -> Formula {
        Formula::new(
            clauses
                .iter()
                .map(|c| Clause::from_dimacs(c).expect("non-tautological clause")),
        )
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.0.iter()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.0.binary_search(clause).is_ok()
    }

    pub fn contains_bottom(&self) -> bool {
        self.0.first().is_some_and(Clause::is_empty)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.0.iter().flat_map(|c| c.vars()).max()
    }

    /// Every clause has at most two literals.
    pub fn is_2cnf(&self) -> bool {
        self.0.iter().all(|c| c.len() <= 2)
    }

    /// Number of clauses mentioning `var`.
    pub fn occurrences(&self, var: Var) -> usize {
        self.0.iter().filter(|c| c.mentions(var)).count()
    }

    pub fn with(&self, clause: Clause) -> Formula {
        Formula::new(self.0.iter().cloned().chain(std::iter::once(clause)))
    }

    pub fn without(&self, clause: &Clause) -> Formula {
        Formula(self.0.iter().filter(|&c| c != clause).cloned().collect())
    }

    /// Rename every variable through `map`; variables absent from the map are
    /// left untouched. Tautologies produced by the renaming are dropped.
    pub fn rename(&self, map: &BTreeMap<Var, Lit>) -> Formula {
        Formula::new(self.0.iter().filter_map(|c| {
            Clause::non_tautological(c.iter().map(|&l| match map.get(&l.var()) {
                Some(&t) if l.is_positive() => t,
                Some(&t) => !t,
                None => l,
            }))
        }))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

impl FromIterator<Clause> for Formula {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        Formula::new(iter)
    }
}

impl<'a> IntoIterator for &'a Formula {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A consistent set of literals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct PartialAssignment(Vec<Lit>);

impl PartialAssignment {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Self, CnfError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(CnfError::InconsistentAssignment(pair[0]));
            }
        }
        Ok(PartialAssignment(lits))
    }

    pub fn empty() -> Self {
        PartialAssignment(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        if self.contains(var.pos()) {
            Some(true)
        } else if self.contains(var.neg()) {
            Some(false)
        } else {
            None
        }
    }

    /// Union of two assignments, failing if they conflict.
    pub fn union(&self, other: &PartialAssignment) -> Result<Self, CnfError> {
        PartialAssignment::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A formula with its variables split into ordered inputs and auxiliaries.
///
/// Variable ids are contiguous: `inputs ∪ auxiliaries = {1, …, V}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Encoding {
    formula: Formula,
    inputs: Vec<Var>,
    auxiliaries: BTreeSet<Var>,
}

impl Encoding {
    pub fn new(formula: Formula, inputs: Vec<Var>, auxiliaries: BTreeSet<Var>) -> Result<Encoding, CnfError> {
        if inputs.is_empty() {
            return Err(CnfError::InvalidEncoding("no input variables".into()));
        }
        let input_set: BTreeSet<Var> = inputs.iter().copied().collect();
        if input_set.len() != inputs.len() {
            return Err(CnfError::InvalidEncoding("repeated input variable".into()));
        }
        if let Some(v) = input_set.intersection(&auxiliaries).next() {
            return Err(CnfError::InvalidEncoding(format!(
                "variable {v} is both input and auxiliary"
            )));
        }
        let total = inputs.len() + auxiliaries.len();
        let declared = input_set.union(&auxiliaries);
        for (k, v) in declared.enumerate() {
            if v.index() != k + 1 {
                return Err(CnfError::InvalidEncoding(format!(
                    "variables are not numbered 1..{total}"
                )));
            }
        }
        if let Some(v) = formula.max_var() {
            if v.index() > total {
                return Err(CnfError::InvalidEncoding(format!(
                    "variable {v} is neither input nor auxiliary"
                )));
            }
        }
        Ok(Encoding {
            formula,
            inputs,
            auxiliaries,
        })
    }

    /// Inputs `1..=n`, every other variable of the formula auxiliary.
    pub fn with_leading_inputs(formula: Formula, n: usize) -> Result<Encoding, CnfError> {
        let total = formula.max_var().map_or(0, Var::index).max(n);
        let inputs = (1..=n as u32).map(Var::new).collect();
        let aux = (n as u32 + 1..=total as u32).map(Var::new).collect();
        Encoding::new(formula, inputs, aux)
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn inputs(&self) -> &[Var] {
        &self.inputs
    }

    pub fn auxiliaries(&self) -> &BTreeSet<Var> {
        &self.auxiliaries
    }

    /// Number of inputs.
    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_vars(&self) -> usize {
        self.inputs.len() + self.auxiliaries.len()
    }

    pub fn size(&self) -> usize {
        self.formula.len()
    }

    /// The `i`-th input, 1-based as in `x_1 … x_n`.
    pub fn input(&self, i: usize) -> Var {
        self.inputs[i - 1]
    }

    /// 1-based position of `var` among the inputs.
    pub fn input_index(&self, var: Var) -> Option<usize> {
        self.inputs.iter().position(|&v| v == var).map(|p| p + 1)
    }

    pub fn is_input(&self, var: Var) -> bool {
        !self.auxiliaries.contains(&var)
    }

    pub fn is_auxiliary(&self, var: Var) -> bool {
        self.auxiliaries.contains(&var)
    }

    /// Same encoding with a different formula over the same variables.
    pub fn with_formula(&self, formula: Formula) -> Result<Encoding, CnfError> {
        Encoding::new(formula, self.inputs.clone(), self.auxiliaries.clone())
    }

    /// Renumbers so that the inputs are `1..=n` in order and the auxiliaries
    /// follow in increasing order of their old ids.
    pub fn compact(&self) -> Encoding {
        self.renumbered(self.auxiliaries.iter().copied().collect())
    }

    /// Like [`Encoding::compact`], but also forgets auxiliaries that no
    /// longer occur in the formula.
    pub fn compact_dropping_unused(&self) -> Encoding {
        let used = self.formula.vars();
        self.renumbered(self.auxiliaries.iter().copied().filter(|v| used.contains(v)).collect())
    }

    fn renumbered(&self, kept_aux: Vec<Var>) -> Encoding {
        let mut map = BTreeMap::new();
        for (k, &v) in self.inputs.iter().chain(kept_aux.iter()).enumerate() {
            map.insert(v, Var::new(k as u32 + 1).pos());
        }
        let formula = self.formula.rename(&map);
        let n = self.inputs.len() as u32;
        Encoding {
            formula,
            inputs: (1..=n).map(Var::new).collect(),
            auxiliaries: (n + 1..=n + kept_aux.len() as u32).map(Var::new).collect(),
        }
    }

    /// Drops input `i` (1-based) from the input list after it has been
    /// eliminated from the formula, then compacts.
    pub(crate) fn remove_input(&self, formula: Formula, i: usize) -> Encoding {
        let removed = self.input(i);
        let inputs: Vec<Var> = self.inputs.iter().copied().filter(|&v| v != removed).collect();
        let mut aux = self.auxiliaries.clone();
        // The removed variable is gone from the formula; keep ids contiguous
        // by treating it as an unused auxiliary until compaction drops it.
        aux.insert(removed);
        Encoding {
            formula,
            inputs,
            auxiliaries: aux,
        }
        .compact_dropping_unused()
    }
}

/// Resolvent of two clauses clashing on exactly one literal.
pub fn resolve(c1: &Clause, c2: &Clause) -> Result<Clause, CnfError> {
    let clashes: Vec<Lit> = c1.iter().copied().filter(|&l| c2.contains(!l)).collect();
    if clashes.len() != 1 {
        return Err(CnfError::NotResolvable(clashes.len()));
    }
    let pivot = clashes[0];
    Clause::new(
        c1.iter()
            .chain(c2.iter())
            .copied()
            .filter(|&l| l != pivot && l != !pivot),
    )
}

/// Applies the substitution `g1 ← g2` (and `¬g1 ← ¬g2`). Clauses that become
/// tautological are dropped.
///
/// # Panics
///
/// If `g1` and `g2` are on the same variable.
pub fn substitute(formula: &Formula, g1: Lit, g2: Lit) -> Formula {
    assert_ne!(g1.var(), g2.var(), "substitution needs two distinct variables");
    let image = if g1.is_positive() { g2 } else { !g2 };
    formula.rename(&BTreeMap::from([(g1.var(), image)]))
}

/// `φ(ρ)`: removes satisfied clauses and falsified literals.
pub fn assign(formula: &Formula, rho: &PartialAssignment) -> Formula {
    Formula::new(
        formula
            .iter()
            .filter(|c| !c.iter().any(|&l| rho.contains(l)))
            .map(|c| Clause(c.iter().copied().filter(|&l| !rho.contains(!l)).collect())),
    )
}

/// DP-elimination of `y`: every clause mentioning `y` is replaced by all
/// non-tautological resolvents on `y`.
pub fn dp_eliminate(formula: &Formula, y: Var) -> Formula {
    let (with_y, rest): (Vec<&Clause>, Vec<&Clause>) = formula.iter().partition(|c| c.mentions(y));
    let positive: Vec<&Clause> = with_y.iter().copied().filter(|c| c.contains(y.pos())).collect();
    let negative: Vec<&Clause> = with_y.iter().copied().filter(|c| c.contains(y.neg())).collect();
    let mut out: Vec<Clause> = rest.into_iter().cloned().collect();
    for p in &positive {
        for q in &negative {
            let lits = p.iter().chain(q.iter()).copied().filter(|l| l.var() != y);
            if let Some(c) = Clause::non_tautological(lits) {
                out.push(c);
            }
        }
    }
    Formula::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i32) -> Lit {
        Lit::from_dimacs(v).unwrap()
    }

    fn clause(v: &[i32]) -> Clause {
        Clause::from_dimacs(v).unwrap()
    }

    #[test]
    fn literal_basics() {
        let l = lit(-3);
        assert_eq!(l.var(), Var::new(3));
        assert!(l.is_negative());
        assert_eq!(!!l, l);
        assert!(lit(3) < lit(-3));
        assert!(lit(-3) < lit(4));
    }

    #[test]
    fn make_clause() {
        assert_eq!(clause(&[-1, -2]).len(), 2);
        assert_eq!(clause(&[1, 1]).len(), 1);
        assert_eq!(Clause::from_dimacs(&[1, -1]), Err(CnfError::Tautological(lit(1))));
    }

    #[test]
    fn clause_order_is_length_then_lex() {
        let mut cs = vec![clause(&[1, 2]), clause(&[3]), clause(&[-1, 2]), clause(&[1, -2])];
        cs.sort();
        assert_eq!(
            cs,
            vec![clause(&[3]), clause(&[1, 2]), clause(&[1, -2]), clause(&[-1, 2])]
        );
    }

    #[test]
    fn resolve_examples() {
        // y = 3
        assert_eq!(resolve(&clause(&[-1, 3]), &clause(&[-3, -2])), Ok(clause(&[-1, -2])));
        assert_eq!(
            resolve(&clause(&[1, 3]), &clause(&[-1, -3])),
            Err(CnfError::NotResolvable(2))
        );
        assert_eq!(resolve(&clause(&[1]), &clause(&[-1])), Ok(Clause::bottom()));
        assert_eq!(resolve(&clause(&[1]), &clause(&[2])), Err(CnfError::NotResolvable(0)));
    }

    #[test]
    fn substitute_examples() {
        let phi = Formula::from_dimacs(&[&[-1, 3]]);
        assert!(substitute(&phi, lit(3), lit(1)).is_empty());
        let phi = Formula::from_dimacs(&[&[-1, 3], &[-3, -2]]);
        assert_eq!(substitute(&phi, lit(3), lit(1)), Formula::from_dimacs(&[&[-1, -2]]));
        // negative g1 flips the image
        let phi = Formula::from_dimacs(&[&[3, 2]]);
        assert_eq!(substitute(&phi, lit(-3), lit(1)), Formula::from_dimacs(&[&[-1, 2]]));
    }

    #[test]
    fn assign_examples() {
        let phi = Formula::from_dimacs(&[&[-1, -2]]);
        let rho = PartialAssignment::new([lit(1), lit(2)]).unwrap();
        let out = assign(&phi, &rho);
        assert!(out.contains_bottom());
        assert_eq!(out.len(), 1);
        assert_eq!(assign(&phi, &PartialAssignment::empty()), phi);
    }

    #[test]
    fn dp_examples() {
        let phi = Formula::from_dimacs(&[&[2, 1], &[-2, 1]]);
        assert_eq!(dp_eliminate(&phi, Var::new(2)), Formula::from_dimacs(&[&[1]]));
        // pure variable: clauses just disappear
        let phi = Formula::from_dimacs(&[&[3, 1], &[3, 2], &[-1, -2]]);
        assert_eq!(dp_eliminate(&phi, Var::new(3)), Formula::from_dimacs(&[&[-1, -2]]));
    }

    #[test]
    fn inconsistent_assignment_rejected() {
        assert!(PartialAssignment::new([lit(2), lit(-2)]).is_err());
    }

    #[test]
    fn encoding_validation() {
        let phi = Formula::from_dimacs(&[&[-1, 3]]);
        let e = Encoding::with_leading_inputs(phi.clone(), 2).unwrap();
        assert_eq!(e.n(), 2);
        assert_eq!(e.auxiliaries().len(), 1);
        assert!(Encoding::new(phi.clone(), vec![], BTreeSet::new()).is_err());
        assert!(Encoding::new(phi.clone(), vec![Var::new(1)], BTreeSet::new()).is_err());
        assert!(Encoding::new(phi, vec![Var::new(1), Var::new(3)], BTreeSet::from([Var::new(3)])).is_err());
    }

    #[test]
    fn compact_renumbers_inputs_first() {
        let phi = Formula::from_dimacs(&[&[-1, 2], &[-2, -3]]);
        let e = Encoding::new(phi, vec![Var::new(3), Var::new(1)], BTreeSet::from([Var::new(2)])).unwrap();
        let c = e.compact();
        // 3 -> 1, 1 -> 2, 2 -> 3
        assert_eq!(c.formula(), &Formula::from_dimacs(&[&[-2, 3], &[-3, -1]]));
        assert_eq!(c.inputs(), &[Var::new(1), Var::new(2)]);
    }
}
