use amocnf::regular::{check_regular, normalize_to_regular, reduce_step, star_analysis, ReduceRule};
use amocnf::verify::check_p_conditions;
use amocnf::{generate, EncodingKind, Limits};

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn normalization_of_generated_encodings() {
    let kinds = [
        EncodingKind::SequentialAmo { n: 7 },
        EncodingKind::TreeAmo { n: 8 },
        EncodingKind::PairwiseAmo { n: 6 },
        EncodingKind::ProductAmo { n: 8 },
        EncodingKind::AmoWrap {
            inner: Box::new(EncodingKind::SequentialAmo { n: 6 }),
        },
    ];
    for kind in kinds {
        let enc = generate(&kind).unwrap();
        let (out, steps) = normalize_to_regular(&enc, &limits()).unwrap();
        assert!(check_p_conditions(&out, &limits()).unwrap().verdict, "{kind}");
        assert!(out.n() < 4 || check_regular(&out, &limits()).unwrap().regular, "{kind}");
        for s in &steps {
            if s.rule.removes_input() {
                assert_eq!(s.n_after + 1, s.n_before);
                assert!(s.size_after + 3 <= s.size_before, "{kind}: {s:?}");
            } else {
                assert_eq!(s.n_after, s.n_before);
                assert!(s.size_after < s.size_before, "{kind}: {s:?}");
            }
        }
        println!(
            "{kind}: {} -> n={} size={} steps={:?}",
            enc.size(),
            out.n(),
            out.size(),
            steps.iter().map(|s| s.to_string()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn pairwise_five_drops_an_input() {
    let enc = generate(&EncodingKind::PairwiseAmo { n: 5 }).unwrap();
    let (out, step) = reduce_step(&enc, &limits()).unwrap();
    assert_eq!(step.rule, ReduceRule::ManyNegatives);
    assert_eq!((out.n(), out.size()), (4, 6));
}

#[test]
fn product_regular_form() {
    for n in [25usize, 36, 49, 100] {
        let enc = generate(&EncodingKind::ProductAmo { n }).unwrap();
        let report = check_regular(&enc, &limits()).unwrap();
        assert!(report.regular, "n = {n}");
        assert_eq!(report.clause_types.as_ref().unwrap().type_q.len(), 2 * n);
        let stars = star_analysis(&enc, &limits()).unwrap();
        for s in stars.stars.iter().filter(|s| s.inputs.len() >= 3) {
            assert_eq!(s.leaves.len(), s.inputs.len() + 1, "n = {n}, {}", s.literal);
        }
        assert!(stars.count.covers_other_inputs && stars.count.type_r_suffices);
    }
}

#[test]
fn long_clause_rule() {
    use amocnf::{Encoding, Formula};
    // x1..x4 inputs; y = 5, z1 = 6, z2 = 7, a2..a4 = 8..10, b = 11.
    let phi = Formula::from_dimacs(&[
        &[-1, 5],
        &[-1, 6, 7],
        &[-6, -7],
        &[-2, 8],
        &[-3, 9],
        &[-4, 10],
        &[-2, 11],
        &[-3, 11],
        &[-4, 11],
        &[-5, -8],
        &[-5, -9],
        &[-5, -10],
        &[-8, -9],
        &[-8, -10],
        &[-9, -10],
    ]);
    let enc = Encoding::with_leading_inputs(phi, 4).unwrap();
    let report = check_regular(&enc, &limits()).unwrap();
    assert_eq!(report.first_failure(), Some((1, "R3")));
    let (out, step) = reduce_step(&enc, &limits()).unwrap();
    assert_eq!(step.rule, ReduceRule::LongClause);
    assert_eq!((step.input, step.size_before, step.size_after, out.n()), (1, 15, 14, 4));
    assert!(check_p_conditions(&out, &limits()).unwrap().verdict);
    assert!(out
        .formula()
        .contains(&amocnf::Clause::from_dimacs(&[-1, 5, 6]).unwrap()));
}
