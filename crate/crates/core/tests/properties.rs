mod common;

use amocnf::semantics::{is_prime_implicate, models};
use amocnf::{
    assign, derives, dp_eliminate, parse_dimacs, prime_reduce, resolve, serialize_dimacs, substitute, up_closure,
    Clause, Encoding, Formula, Limits, Lit, PartialAssignment, Var,
};
use common::*;
use proptest::prelude::*;

fn arb_assignment(num_vars: u32, max_len: usize) -> impl Strategy<Value = PartialAssignment> {
    prop::collection::vec(arb_lit(num_vars), 0..=max_len).prop_map(|lits| {
        let mut seen = std::collections::BTreeSet::new();
        PartialAssignment::new(lits.into_iter().filter(|l| seen.insert(l.var()))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resolvents_are_implicates(a in arb_clause(6, 4), b in arb_clause(6, 4)) {
        let (Some(a), Some(b)) = (a, b) else { return Ok(()) };
        if let Ok(r) = resolve(&a, &b) {
            let pair = Formula::new([a, b]);
            for alpha in brute_models(&pair, 6) {
                prop_assert!(r.iter().any(|&l| lit_value(l, alpha)));
            }
        }
    }

    #[test]
    fn assignment_restricts_models(phi in arb_formula(6, 10, 3), rho in arb_assignment(6, 3)) {
        let reduced = assign(&phi, &rho);
        for v in reduced.vars() {
            prop_assert!(rho.value(v).is_none());
        }
        for alpha in 0..1u64 << 6 {
            if rho.lits().iter().all(|&l| lit_value(l, alpha)) {
                prop_assert_eq!(eval(&phi, alpha), eval(&reduced, alpha));
            }
        }
    }

    #[test]
    fn elimination_preserves_projection(phi in arb_formula(6, 10, 3), y in 1u32..=6) {
        let eliminated = dp_eliminate(&phi, Var::new(y));
        prop_assert!(!eliminated.vars().contains(&Var::new(y)));
        let keep: Vec<u32> = (1..=6).filter(|&v| v != y).collect();
        prop_assert_eq!(project(&brute_models(&phi, 6), &keep), project(&brute_models(&eliminated, 6), &keep));
    }

    #[test]
    fn prime_reduction_keeps_the_function(phi in arb_formula(6, 8, 4)) {
        let limits = Limits::default();
        match prime_reduce(&phi, &limits) {
            Ok(reduced) => {
                prop_assert_eq!(brute_models(&phi, 6), brute_models(&reduced, 6));
                prop_assert!(reduced.len() <= phi.len());
                for c in reduced.iter() {
                    prop_assert!(is_prime_implicate(&reduced, c, &limits).unwrap());
                    prop_assert!(phi.iter().any(|d| c.is_subset_of(d)));
                }
            }
            Err(_) => prop_assert!(brute_models(&phi, 6).is_empty()),
        }
    }

    #[test]
    fn substitution_preserves_propagation(
        phi in arb_formula(8, 12, 3),
        g1 in arb_lit(8),
        g2 in arb_lit(8),
        h in arb_lit(8),
    ) {
        if g1.var() == g2.var() || g1.var() == h.var() {
            return Ok(());
        }
        let image = substitute(&phi, g1, g2);
        let empty = PartialAssignment::empty();
        if derives(&phi, &empty, h) && !brute_models(&image, 8).is_empty() {
            prop_assert!(derives(&image, &empty, h));
        }
    }

    #[test]
    fn propagation_is_sound(phi in arb_formula(7, 12, 3), rho in arb_assignment(7, 3)) {
        let out = up_closure(&phi, &rho);
        if out.is_conflict() {
            let consistent = brute_models(&phi, 7).into_iter().any(|a| rho.lits().iter().all(|&l| lit_value(l, a)));
            prop_assert!(!consistent);
        } else {
            for &l in &out.derived {
                prop_assert!(brute_entails(&phi, 7, rho.lits(), l));
            }
        }
    }

    #[test]
    fn propagation_is_monotone(phi in arb_formula(7, 12, 3), small in arb_assignment(7, 2), extra in arb_lit(7)) {
        let Ok(large) = small.union(&PartialAssignment::new([extra]).unwrap()) else { return Ok(()) };
        let a = up_closure(&phi, &small);
        let b = up_closure(&phi, &large);
        if !b.is_conflict() {
            prop_assert!(!a.is_conflict());
            for l in &a.derived {
                prop_assert!(b.derived.contains(l));
            }
        }
    }

    #[test]
    fn propagation_ignores_clause_order(phi in arb_formula(7, 12, 3), rho in arb_assignment(7, 3), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        // Renaming variables reorders the canonical clause list, so the
        // propagator meets the clauses in a different order.
        let mut ids: Vec<u32> = (1..=7).collect();
        ids.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let map: std::collections::BTreeMap<Var, Lit> =
            ids.iter().enumerate().map(|(k, &v)| (Var::new(k as u32 + 1), Var::new(v).pos())).collect();
        let rename = |l: Lit| if l.is_positive() { map[&l.var()] } else { !map[&l.var()] };
        let renamed = phi.rename(&map);
        let renamed_rho = PartialAssignment::new(rho.lits().iter().map(|&l| rename(l))).unwrap();
        let a = up_closure(&phi, &rho);
        let b = up_closure(&renamed, &renamed_rho);
        prop_assert_eq!(a.kind, b.kind);
        if !a.is_conflict() {
            let mut mapped: Vec<Lit> = a.derived.iter().map(|&l| rename(l)).collect();
            mapped.sort_unstable();
            prop_assert_eq!(mapped, b.derived);
        }
    }

    #[test]
    fn dimacs_round_trip(phi in arb_formula(8, 10, 4), n in 1usize..=8) {
        let num_vars = phi.max_var().map_or(0, |v| v.id() as usize).max(n);
        let inputs: Vec<Var> = (1..=n as u32).map(Var::new).collect();
        let aux = (n as u32 + 1..=num_vars as u32).map(Var::new).collect();
        let enc = Encoding::new(phi, inputs, aux).unwrap();
        let text = serialize_dimacs(&enc);
        let parsed = parse_dimacs(&text).unwrap();
        prop_assert_eq!(&parsed, &enc);
        prop_assert_eq!(serialize_dimacs(&parsed), text);
    }

    #[test]
    fn library_models_match_brute_force(phi in arb_formula(7, 10, 3)) {
        let ours = models(&phi, 7, &Limits::default()).unwrap();
        prop_assert_eq!(ours, brute_models(&phi, 7));
    }
}

#[test]
fn clause_semantics_examples() {
    assert!(Clause::from_dimacs(&[1, -1]).is_err());
    let c = Clause::from_dimacs(&[3, -1, 3]).unwrap();
    assert_eq!(c.len(), 2);
    let r = resolve(
        &Clause::from_dimacs(&[1, 2]).unwrap(),
        &Clause::from_dimacs(&[-1, 3]).unwrap(),
    )
    .unwrap();
    assert_eq!(r, Clause::from_dimacs(&[2, 3]).unwrap());
}
