#![allow(dead_code)]

use amocnf::{Clause, Formula, Lit};
use proptest::prelude::*;

pub fn arb_lit(num_vars: u32) -> impl Strategy<Value = Lit> {
    (1..=num_vars as i32, any::<bool>()).prop_map(|(v, pos)| Lit::from_dimacs(if pos { v } else { -v }).unwrap())
}

pub fn arb_clause(num_vars: u32, max_len: usize) -> impl Strategy<Value = Option<Clause>> {
    prop::collection::vec(arb_lit(num_vars), 1..=max_len).prop_map(Clause::non_tautological)
}

/// Random formula over variables `1..=num_vars`; tautological draws are dropped.
pub fn arb_formula(num_vars: u32, max_clauses: usize, max_len: usize) -> impl Strategy<Value = Formula> {
    prop::collection::vec(arb_clause(num_vars, max_len), 0..=max_clauses)
        .prop_map(|cs| Formula::new(cs.into_iter().flatten()))
}

/// Random 2-CNF formula without unit clauses.
pub fn arb_unit_free_2cnf(num_vars: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    prop::collection::vec((arb_lit(num_vars), arb_lit(num_vars)), 0..=max_clauses).prop_map(|pairs| {
        Formula::new(
            pairs
                .into_iter()
                .filter(|(a, b)| a.var() != b.var())
                .filter_map(|(a, b)| Clause::non_tautological([a, b])),
        )
    })
}

pub fn all_lits(num_vars: u32) -> Vec<Lit> {
    (1..=num_vars as i32)
        .flat_map(|v| [Lit::from_dimacs(v).unwrap(), Lit::from_dimacs(-v).unwrap()])
        .collect()
}

/// Truth value of a literal under `alpha` (bit `v - 1` holds variable `v`).
pub fn lit_value(l: Lit, alpha: u64) -> bool {
    (alpha >> (l.var().id() - 1) & 1 == 1) == l.is_positive()
}

pub fn eval(formula: &Formula, alpha: u64) -> bool {
    formula.iter().all(|c| c.iter().any(|&l| lit_value(l, alpha)))
}

pub fn brute_models(formula: &Formula, num_vars: u32) -> Vec<u64> {
    (0..1u64 << num_vars).filter(|&a| eval(formula, a)).collect()
}

/// Every model of `formula` satisfying `assumptions` satisfies `h`.
pub fn brute_entails(formula: &Formula, num_vars: u32, assumptions: &[Lit], h: Lit) -> bool {
    brute_models(formula, num_vars)
        .into_iter()
        .filter(|&a| assumptions.iter().all(|&l| lit_value(l, a)))
        .all(|a| lit_value(h, a))
}

/// Projection of the models onto the variables in `keep`, as a sorted set.
pub fn project(models: &[u64], keep: &[u32]) -> std::collections::BTreeSet<u64> {
    models
        .iter()
        .map(|&a| {
            keep.iter()
                .enumerate()
                .fold(0u64, |m, (k, &v)| m | ((a >> (v - 1) & 1) << k))
        })
        .collect()
}
