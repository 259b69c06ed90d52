//! Structure of p-encodings: the clause sets `Q_i`, regular form, the partner
//! literals `PA_i`, star analysis, and the size-reducing rewrites that bring
//! a prime p-encoding into regular form.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{assign, substitute, Clause, CnfError, Encoding, Lit, PartialAssignment, Var};
use crate::propagation::{up_closure, Propagator};
use crate::semantics::{prime_reduce, Limits};
use crate::verify::{check_p_conditions, is_prime, VerifyError, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("not a p-encoding: {0}")]
    NotAPEncoding(Witness),
    #[error("encoding is not in regular form")]
    NotRegular,
    #[error("encoding is already in regular form")]
    AlreadyRegular,
    #[error("encoding is not prime: {0}")]
    NotPrime(String),
    #[error("reduction needs at least 4 inputs, found {0}")]
    TooFewInputs(usize),
    #[error("formula is not 2-CNF: clause ({0}) is too long")]
    NotTwoCnf(Clause),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

impl From<crate::semantics::SemanticError> for StructureError {
    fn from(e: crate::semantics::SemanticError) -> Self {
        StructureError::Verify(e.into())
    }
}

/// `Q_i` for every input, in input order: the clauses containing `¬x_i`.
pub fn q_sets(enc: &Encoding) -> Vec<Vec<Clause>> {
    enc.inputs()
        .iter()
        .map(|v| enc.formula().iter().filter(|c| c.contains(v.neg())).cloned().collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputConditions {
    pub input: usize,
    pub q_size: usize,
    /// `|Q_i| = 2`.
    pub r1: bool,
    /// No clause of `Q_i` mentions another input.
    pub r2: bool,
    /// Every clause of `Q_i` is binary.
    pub r3: bool,
}

impl InputConditions {
    pub fn holds(&self) -> bool {
        self.r1 && self.r2 && self.r3
    }
}

/// The partner literals of an input in regular form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PSet {
    pub input: usize,
    pub pa: Vec<Lit>,
    pub pb: Vec<Var>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseTypes {
    /// Clauses in some `Q_i`.
    pub type_q: Vec<Clause>,
    /// All other clauses.
    pub type_r: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub size: usize,
    pub q_sizes: Vec<usize>,
    pub conditions: Vec<InputConditions>,
    pub regular: bool,
    pub p_sets: Option<Vec<PSet>>,
    pub clause_types: Option<ClauseTypes>,
}

impl StructureReport {
    /// First input failing R1, then R2, then R3, with the condition name.
    pub fn first_failure(&self) -> Option<(usize, &'static str)> {
        let find = |pred: fn(&InputConditions) -> bool, name| {
            self.conditions.iter().find(|c| !pred(c)).map(|c| (c.input, name))
        };
        find(|c| c.r1, "R1")
            .or_else(|| find(|c| c.r2, "R2"))
            .or_else(|| find(|c| c.r3, "R3"))
    }
}

/// Regular-form analysis without the p-encoding check.
pub fn structure(enc: &Encoding) -> StructureReport {
    let q = q_sets(enc);
    let conditions: Vec<InputConditions> = q
        .iter()
        .enumerate()
        .map(|(k, qi)| {
            let x = enc.inputs()[k];
            InputConditions {
                input: k + 1,
                q_size: qi.len(),
                r1: qi.len() == 2,
                r2: qi.iter().all(|c| c.vars().all(|v| v == x || enc.is_auxiliary(v))),
                r3: qi.iter().all(|c| c.len() == 2),
            }
        })
        .collect();
    let regular = conditions.iter().all(InputConditions::holds);
    let (p_sets, clause_types) = if regular {
        let p_sets = q
            .iter()
            .enumerate()
            .map(|(k, qi)| {
                let x = enc.inputs()[k];
                let mut pa: Vec<Lit> = qi
                    .iter()
                    .flat_map(|c| c.iter().copied())
                    .filter(|l| l.var() != x)
                    .collect();
                pa.sort_unstable();
                let pb: BTreeSet<Var> = pa.iter().map(|l| l.var()).collect();
                PSet {
                    input: k + 1,
                    pa,
                    pb: pb.into_iter().collect(),
                }
            })
            .collect();
        let in_q: BTreeSet<&Clause> = q.iter().flatten().collect();
        let (type_q, type_r) = enc.formula().iter().cloned().partition(|c| in_q.contains(c));
        (Some(p_sets), Some(ClauseTypes { type_q, type_r }))
    } else {
        (None, None)
    };
    StructureReport {
        n: enc.n(),
        size: enc.size(),
        q_sizes: q.iter().map(Vec::len).collect(),
        conditions,
        regular,
        p_sets,
        clause_types,
    }
}

fn require_p_encoding(enc: &Encoding, limits: &Limits) -> Result<(), StructureError> {
    let report = check_p_conditions(enc, limits)?;
    match report.witness {
        Some(w) => Err(StructureError::NotAPEncoding(w)),
        None => Ok(()),
    }
}

/// Regular-form analysis of a p-encoding.
pub fn check_regular(enc: &Encoding, limits: &Limits) -> Result<StructureReport, StructureError> {
    require_p_encoding(enc, limits)?;
    Ok(structure(enc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    pub literal: Lit,
    /// `I_h`: inputs whose partner set contains the literal.
    pub inputs: Vec<usize>,
    /// `L_h`: union of those partner sets.
    pub leaves: Vec<Lit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputClosure {
    pub input: usize,
    /// `M_i`: auxiliary literals derived by propagation from `x_i`.
    pub auxiliary_literals: Vec<Lit>,
}

/// The counting argument behind the regular-form floor, evaluated on a
/// concrete encoding: `g` maximizes `|I_g|` (ties to the smaller literal) and
/// `i` is the smallest input in `I_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCount {
    pub g: Lit,
    pub input: usize,
    pub star_size: usize,
    pub closure_size: usize,
    pub type_r: usize,
    /// `|M_i| · |I_g| ≥ n - 1`.
    pub covers_other_inputs: bool,
    /// `type-R count ≥ |M_i| - 2`.
    pub type_r_suffices: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub stars: Vec<Star>,
    pub closures: Vec<InputClosure>,
    pub count: StarCount,
}

impl StarReport {
    pub fn star(&self, literal: Lit) -> Option<&Star> {
        self.stars.iter().find(|s| s.literal == literal)
    }
}

pub fn star_analysis(enc: &Encoding, limits: &Limits) -> Result<StarReport, StructureError> {
    let report = check_regular(enc, limits)?;
    star_analysis_of(enc, &report)
}

/// Star analysis from an existing structure report (no p-encoding check).
pub fn star_analysis_of(enc: &Encoding, report: &StructureReport) -> Result<StarReport, StructureError> {
    let (Some(p_sets), Some(types)) = (&report.p_sets, &report.clause_types) else {
        return Err(StructureError::NotRegular);
    };
    let literals: BTreeSet<Lit> = p_sets.iter().flat_map(|p| p.pa.iter().copied()).collect();
    let stars: Vec<Star> = literals
        .iter()
        .map(|&h| {
            let members: Vec<&PSet> = p_sets.iter().filter(|p| p.pa.contains(&h)).collect();
            let leaves: BTreeSet<Lit> = members.iter().flat_map(|p| p.pa.iter().copied()).collect();
            Star {
                literal: h,
                inputs: members.iter().map(|p| p.input).collect(),
                leaves: leaves.into_iter().collect(),
            }
        })
        .collect();
    let mut p = Propagator::with_vars(enc.formula(), enc.num_vars());
    let closures: Vec<InputClosure> = (1..=enc.n())
        .map(|i| {
            p.run(&[enc.input(i).pos()]);
            let mut aux: Vec<Lit> = p
                .trail()
                .iter()
                .copied()
                .filter(|l| enc.is_auxiliary(l.var()))
                .collect();
            aux.sort_unstable();
            InputClosure {
                input: i,
                auxiliary_literals: aux,
            }
        })
        .collect();
    let best = stars
        .iter()
        .max_by(|a, b| a.inputs.len().cmp(&b.inputs.len()).then(b.literal.cmp(&a.literal)))
        .expect("regular encodings have partner literals");
    let input = best.inputs[0];
    let closure_size = closures[input - 1].auxiliary_literals.len();
    let type_r = types.type_r.len();
    let count = StarCount {
        g: best.literal,
        input,
        star_size: best.inputs.len(),
        closure_size,
        type_r,
        covers_other_inputs: closure_size * best.inputs.len() + 1 >= enc.n(),
        type_r_suffices: type_r + 2 >= closure_size,
    };
    Ok(StarReport { stars, closures, count })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReduceRule {
    /// `|Q_i| = 1`: substitute the partner literal by `x_i`.
    SingleNegative,
    /// `|Q_i| ≥ 3`: fix `x_i = 0`.
    ManyNegatives,
    /// `Q_i` contains `¬x_i ∨ ¬x_j`: fix `x_i = 0`, then substitute the
    /// remaining partner of `x_j`.
    ImpureClause,
    /// `Q_i` contains a long clause: move it behind the binary partner, then
    /// substitute that partner by `x_i`.
    LongClause,
}

impl ReduceRule {
    pub fn tag(self) -> &'static str {
        match self {
            ReduceRule::SingleNegative => "i",
            ReduceRule::ManyNegatives => "ii",
            ReduceRule::ImpureClause => "iii",
            ReduceRule::LongClause => "iv",
        }
    }

    /// Whether the rule removes an input.
    pub fn removes_input(self) -> bool {
        matches!(self, ReduceRule::ManyNegatives | ReduceRule::ImpureClause)
    }
}

impl fmt::Display for ReduceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceStep {
    pub rule: ReduceRule,
    /// The input (1-based, numbering before the step) the rule fired on.
    pub input: usize,
    pub size_before: usize,
    pub size_after: usize,
    pub n_before: usize,
    pub n_after: usize,
}

impl fmt::Display for ReduceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x{}", self.rule, self.input)
    }
}

fn not_prime(msg: String) -> StructureError {
    StructureError::NotPrime(msg)
}

/// Substitutes the single partner of input `i` by `x_i`.
fn substitute_single_partner(enc: &Encoding, i: usize) -> Result<Encoding, StructureError> {
    let x = enc.input(i);
    let q: Vec<&Clause> = enc.formula().iter().filter(|c| c.contains(x.neg())).collect();
    let [clause] = q.as_slice() else {
        return Err(not_prime(format!(
            "expected a single clause with ¬x{i}, found {}",
            q.len()
        )));
    };
    let [partner] = clause.without(x.neg()).lits()[..] else {
        return Err(not_prime(format!(
            "the only clause with ¬x{i} is not binary: ({clause})"
        )));
    };
    if !enc.is_auxiliary(partner.var()) {
        return Err(not_prime(format!(
            "the only clause with ¬x{i} pairs it with an input: ({clause})"
        )));
    }
    let formula = substitute(enc.formula(), partner, x.pos());
    Ok(enc.with_formula(formula)?.compact_dropping_unused())
}

fn fix_input_false(enc: &Encoding, i: usize) -> Encoding {
    let rho = PartialAssignment::new([enc.input(i).neg()]).expect("single literal");
    enc.remove_input(assign(enc.formula(), &rho), i)
}

/// Applies one size-reducing rewrite to a prime p-encoding that is not in
/// regular form. Rules are tried in the order (ii), (i), (iii), (iv), each at
/// the lowest input where it applies.
pub fn reduce_step(enc: &Encoding, limits: &Limits) -> Result<(Encoding, ReduceStep), StructureError> {
    if enc.n() < 4 {
        return Err(StructureError::TooFewInputs(enc.n()));
    }
    require_p_encoding(enc, limits)?;
    let report = structure(enc);
    if report.regular {
        return Err(StructureError::AlreadyRegular);
    }
    if !is_prime(enc.formula(), limits)? {
        return Err(not_prime("some clause is not a prime implicate".into()));
    }
    let (rule, i, out) = apply_rule(enc, &report)?;
    let step = ReduceStep {
        rule,
        input: i,
        size_before: enc.size(),
        size_after: out.size(),
        n_before: enc.n(),
        n_after: out.n(),
    };
    Ok((out, step))
}

fn apply_rule(enc: &Encoding, report: &StructureReport) -> Result<(ReduceRule, usize, Encoding), StructureError> {
    let cond = &report.conditions;
    if let Some(c) = cond.iter().find(|c| c.q_size >= 3) {
        return Ok((ReduceRule::ManyNegatives, c.input, fix_input_false(enc, c.input)));
    }
    if let Some(c) = cond.iter().find(|c| c.q_size == 1) {
        return Ok((
            ReduceRule::SingleNegative,
            c.input,
            substitute_single_partner(enc, c.input)?,
        ));
    }
    if let Some(c) = cond.iter().find(|c| c.q_size == 0) {
        return Err(not_prime(format!("no clause contains ¬x{}", c.input)));
    }
    if let Some(c) = cond.iter().find(|c| !c.r2) {
        let i = c.input;
        let x = enc.input(i);
        let impure = enc
            .formula()
            .iter()
            .find(|cl| cl.contains(x.neg()) && cl.vars().any(|v| v != x && enc.is_input(v)))
            .expect("R2 fails at this input");
        let other = match impure.without(x.neg()).lits()[..] {
            [l] if l.is_negative() && enc.is_input(l.var()) => l.var(),
            _ => {
                return Err(not_prime(format!(
                    "impure clause ({impure}) is not of the form ¬x{i} ∨ ¬x_j"
                )))
            }
        };
        let j = enc.input_index(other).expect("input variable");
        let reduced = fix_input_false(enc, i);
        let j_after = if j > i { j - 1 } else { j };
        return Ok((
            ReduceRule::ImpureClause,
            i,
            substitute_single_partner(&reduced, j_after)?,
        ));
    }
    let c = cond.iter().find(|c| !c.r3).expect("some condition fails");
    let i = c.input;
    let x = enc.input(i);
    let q: Vec<&Clause> = enc.formula().iter().filter(|cl| cl.contains(x.neg())).collect();
    let (short, long): (Vec<&Clause>, Vec<&Clause>) = q.iter().partition(|cl| cl.len() == 2);
    let ([binary], [long]) = (short.as_slice(), long.as_slice()) else {
        return Err(not_prime(format!(
            "Q_{i} does not consist of one binary and one long clause"
        )));
    };
    let y = binary.without(x.neg()).lits()[0];
    let zs: Vec<Lit> = long.without(x.neg()).lits().to_vec();
    let closure = up_closure(
        enc.formula(),
        &PartialAssignment::new([x.pos()]).expect("single literal"),
    );
    if let Some(z) = zs.iter().find(|&&z| closure.is_conflict() || closure.contains(!z)) {
        return Err(not_prime(format!("x{i} propagates {}, so ({long}) is not prime", !*z)));
    }
    let replacement = Clause::new(std::iter::once(!y).chain(zs.iter().copied()))
        .map_err(|_| not_prime(format!("({long}) cannot be moved behind {y}")))?;
    let moved = enc.formula().without(long).with(replacement);
    let moved = enc.with_formula(moved)?;
    Ok((ReduceRule::LongClause, i, substitute_single_partner(&moved, i)?))
}

/// Iterates prime reduction and [`reduce_step`] until the encoding is in
/// regular form or has fewer than 4 inputs.
pub fn normalize_to_regular(enc: &Encoding, limits: &Limits) -> Result<(Encoding, Vec<ReduceStep>), StructureError> {
    if enc.n() < 3 {
        return Err(StructureError::TooFewInputs(enc.n()));
    }
    require_p_encoding(enc, limits)?;
    if !is_prime(enc.formula(), limits)? {
        return Err(not_prime("some clause is not a prime implicate".into()));
    }
    let mut current = enc.compact();
    let mut steps = Vec::new();
    while current.n() >= 4 && !structure(&current).regular {
        let reduced = prime_reduce(current.formula(), limits)?;
        current = current.with_formula(reduced)?.compact_dropping_unused();
        if structure(&current).regular {
            break;
        }
        let (next, step) = reduce_step(&current, limits)?;
        steps.push(step);
        current = next;
    }
    Ok((current, steps))
}
