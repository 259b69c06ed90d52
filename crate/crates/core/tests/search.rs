mod common;

use amocnf::search::{find_minimum, meets_requirement, Requirement, SearchSpec};
use amocnf::verify::{check_p_conditions, is_encoding_of, is_input_pc, FunctionSpec};
use amocnf::{lower_bound_general, Encoding, Formula, Lit, Var};
use common::arb_clause;
use proptest::prelude::*;

fn as_encoding(phi: &Formula, n: usize) -> Encoding {
    Encoding::new(phi.clone(), (1..=n as u32).map(Var::new).collect(), Default::default()).unwrap()
}

fn checker_verdict(phi: &Formula, f: &FunctionSpec, require: Requirement) -> bool {
    let enc = as_encoding(phi, f.n);
    let limits = Default::default();
    match require {
        Requirement::Encoding => is_encoding_of(&enc, f, &limits).unwrap(),
        Requirement::PEncoding => check_p_conditions(&enc, &limits).unwrap().verdict,
        Requirement::InputPc => is_input_pc(&enc, f, &limits).unwrap().verdict,
    }
}

fn functions() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::amo(2),
        FunctionSpec::eo(2),
        FunctionSpec::amo(3),
        FunctionSpec::eo(3),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracle_agrees_with_checkers(clauses in prop::collection::vec(arb_clause(3, 3), 0..6), pick in 0usize..4) {
        let f = &functions()[pick];
        let phi = Formula::new(clauses.into_iter().flatten().filter(|c| c.vars().all(|v| v.index() <= f.n)));
        for require in [Requirement::Encoding, Requirement::PEncoding, Requirement::InputPc] {
            prop_assert_eq!(
                meets_requirement(&phi, f, require),
                checker_verdict(&phi, f, require),
                "{:?} {:?}", require, phi
            );
        }
    }
}

#[test]
fn oracle_agrees_on_every_small_amo_formula() {
    // All formulas of up to three clauses built from implicates of AMO_3.
    let f = FunctionSpec::amo(3);
    let pool: Vec<amocnf::Clause> = (1..27u32)
        .filter_map(|code| {
            let lits = (0..3).filter_map(|k| match code / 3u32.pow(k) % 3 {
                1 => Some(Var::new(k + 1).pos()),
                2 => Some(Var::new(k + 1).neg()),
                _ => None,
            });
            amocnf::Clause::new(lits).ok()
        })
        .filter(|c| c.iter().filter(|l| l.is_negative()).count() >= 2)
        .collect();
    let mut seen = 0;
    for a in 0..pool.len() {
        for b in a..pool.len() {
            for c in b..pool.len() {
                let phi = Formula::new([pool[a].clone(), pool[b].clone(), pool[c].clone()]);
                for require in [Requirement::Encoding, Requirement::InputPc] {
                    assert_eq!(
                        meets_requirement(&phi, &f, require),
                        checker_verdict(&phi, &f, require),
                        "{phi:?}"
                    );
                }
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn witnesses_survive_input_permutations() {
    for f in functions() {
        for require in [Requirement::PEncoding, Requirement::InputPc] {
            let result = find_minimum(&SearchSpec::new(f.clone(), require, 4)).unwrap();
            let witness = result.witness().unwrap();
            let n = f.n as u32;
            let perms: Vec<Vec<u32>> = if n == 2 {
                vec![vec![2, 1]]
            } else {
                vec![vec![2, 3, 1], vec![3, 1, 2], vec![1, 3, 2]]
            };
            for perm in perms {
                let map = (1..=n)
                    .map(|v| (Var::new(v), Var::new(perm[v as usize - 1]).pos()))
                    .collect();
                let image = witness.formula().rename(&map);
                assert_eq!(image.len(), witness.size());
                assert!(meets_requirement(&image, &f, require));
                assert!(checker_verdict(&image, &f, require));
            }
        }
    }
}

#[test]
fn minima_match_general_bound() {
    for n in [2usize, 3] {
        let r = find_minimum(&SearchSpec::new(FunctionSpec::amo(n), Requirement::InputPc, 4)).unwrap();
        assert_eq!(r.size(), Some(lower_bound_general(n).unwrap()));
    }
}

#[test]
fn witness_clauses_are_canonical() {
    let r = find_minimum(&SearchSpec::new(FunctionSpec::eo(3), Requirement::InputPc, 4)).unwrap();
    let w = r.witness().unwrap().formula();
    let lit = |d: i32| Lit::from_dimacs(d).unwrap();
    assert!(w.contains(&amocnf::Clause::new([lit(1), lit(2), lit(3)]).unwrap()));
    assert_eq!(w.len(), 4);
    assert!(r.nodes >= r.checked);
}
