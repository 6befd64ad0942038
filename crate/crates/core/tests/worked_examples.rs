//! End-to-end facts about two small fixtures, frozen as regression oracles.
//!
//! `diamond` is a four-journal tournament where J1 took a citation from each
//! of J2 and J3, who each took one from J4. `upset_square` is a four-journal
//! tournament of drawn pairs except for one decisive result, J3 over J4 —
//! the smallest instance where self-consistency and aggregation invariance
//! pull in opposite directions.

use jrank_core::axioms::{certify_impossibility, check_ia, check_sc_method, IaMode};
use jrank_core::decomp::{canonical_decomposition, competitor_set, SearchBounds};
use jrank_core::methods::{induced_order, least_squares_residual, Method};
use jrank_core::order::{enumerate_weak_orders, Relation, WeakOrder};
use jrank_core::rational::rat;
use jrank_core::sc::{sc_admissible_set, sc_check_scores, sc_dominates};
use jrank_core::{Problem, Rational};

fn r(n: i64) -> Rational {
    rat(n, 1)
}

fn h() -> Rational {
    rat(1, 2)
}

fn diamond() -> Problem {
    Problem::from_rows(vec![
        vec![r(0), r(1), r(1), r(0)],
        vec![r(0), r(0), r(0), r(1)],
        vec![r(0), r(0), r(0), r(1)],
        vec![r(0), r(0), r(0), r(0)],
    ])
    .unwrap()
}

fn upset_square() -> Problem {
    Problem::from_rows(vec![
        vec![r(0), h(), h(), r(0)],
        vec![h(), r(0), r(0), h()],
        vec![h(), r(0), r(0), r(1)],
        vec![r(0), h(), r(0), r(0)],
    ])
    .unwrap()
}

fn forced_diamond_order() -> WeakOrder {
    WeakOrder::new(vec![vec![0], vec![1, 2], vec![3]]).unwrap()
}

fn bounds() -> SearchBounds {
    SearchBounds::default()
}

fn assert_scores(actual: &[f64], expected: &[f64]) {
    assert_eq!(actual.len(), expected.len());
    for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
        assert!((a - e).abs() <= 1e-9, "score {i}: got {a}, expected {e}");
    }
}

#[test]
fn diamond_lies_in_all_four_classes() {
    let flags = diamond().classify();
    assert!(flags.balanced);
    assert!(flags.unweighted);
    assert!(flags.loopless);
    assert!(flags.extremal);
    assert!(flags.all());
}

#[test]
fn diamond_least_squares_scores_and_order() {
    let p = diamond();
    let scores = Method::LeastSquares.score(&p);
    assert_scores(&scores.values, &[1.0, 0.0, 0.0, -1.0]);
    assert!(least_squares_residual(&p, &scores.values) <= 1e-9);
    assert_eq!(induced_order(&scores, 1e-8), forced_diamond_order());
}

#[test]
fn diamond_net_sum_scores() {
    let scores = Method::NetSum.score(&diamond());
    assert_scores(&scores.values, &[2.0, 0.0, 0.0, -2.0]);
    assert_eq!(induced_order(&scores, 1e-8), forced_diamond_order());
}

#[test]
fn diamond_admits_exactly_one_weak_order() {
    let set = sc_admissible_set(&diamond(), &bounds()).unwrap();
    assert_eq!(set, vec![forced_diamond_order()]);
    // ... out of the full field of candidates on four journals.
    assert_eq!(enumerate_weak_orders(4).unwrap().len(), 75);
}

#[test]
fn diamond_is_its_own_single_layer() {
    let p = diamond();
    let d = canonical_decomposition(&p).unwrap();
    assert!(d.is_valid());
    assert_eq!(d.layers.len(), 1);
    assert_eq!(d.layers[0].problem, p);

    // Competitor sets read off that layer: the bottom journal faced the
    // middle two, and so did the top one.
    let layer = &d.layers[0];
    let opponents = |i: usize| -> Vec<usize> {
        competitor_set(layer, i)
            .unwrap()
            .members
            .into_iter()
            .collect()
    };
    assert_eq!(opponents(3), vec![1, 2]);
    assert_eq!(opponents(0), vec![1, 2]);
}

#[test]
fn diamond_top_strictly_dominates_bottom_under_any_order() {
    let p = diamond();
    for order in [forced_diamond_order(), WeakOrder::total_tie(4)] {
        let w = sc_dominates(&p, 0, 3, &order, &bounds()).expect("witness exists");
        assert!(w.strict, "identical opponents, strictly better record");
        assert!(w.validate(&p, 0, 3, &order));
    }
}

#[test]
fn diamond_middle_journals_dominate_each_other_non_strictly() {
    let p = diamond();
    let order = forced_diamond_order();
    for (i, j) in [(1, 2), (2, 1)] {
        let w = sc_dominates(&p, i, j, &order, &bounds()).expect("witness exists");
        assert!(!w.strict, "identical records admit only mutual dominance");
        assert!(w.validate(&p, i, j, &order));
    }
}

#[test]
fn diamond_rejects_flat_scores() {
    let p = diamond();
    let violation = sc_check_scores(&p, &Method::Flat.score(&p), 1e-8, &bounds())
        .expect("an all-tied order cannot honor strict dominance");
    // The checker reports the lexicographically first broken pair; the
    // top-vs-bottom pair is just as broken, witnessed strictly above.
    assert_eq!(violation.pair, (0, 1));
    assert_eq!(violation.observed, Relation::Tied);
    assert!(violation.witness.strict);
    assert!(violation
        .witness
        .validate(&p, 0, 1, &WeakOrder::total_tie(4)));
}

#[test]
fn diamond_certify_needs_a_strict_before_relation() {
    // The only admissible order ties the middle pair, so no certificate can
    // anchor on it.
    let cert = certify_impossibility(&diamond(), (1, 2), (0, 3), &bounds()).unwrap();
    assert!(cert.is_none());
}

#[test]
fn upset_square_matches_matrix_and_classes() {
    let p = upset_square();
    let m = p.matches();
    assert_eq!(m.entry(2, 3), r(1));
    assert_eq!(m.entry(0, 1), r(1));
    assert_eq!(m.entry(0, 3), r(0));
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m.entry(i, j), m.entry(j, i));
        }
    }
    assert!(p.classify().all());
}

#[test]
fn upset_square_least_squares_is_self_consistent() {
    let p = upset_square();
    let scores = Method::LeastSquares.score(&p);
    assert_scores(&scores.values, &[0.125, -0.125, 0.375, -0.375]);
    let order = induced_order(&scores, 1e-8);
    assert_eq!(
        order,
        WeakOrder::new(vec![vec![2], vec![0], vec![1], vec![3]]).unwrap()
    );
    assert!(sc_check_scores(&p, &scores, 1e-8, &bounds()).is_none());
}

#[test]
fn upset_square_third_strictly_dominates_second() {
    let p = upset_square();
    let order = induced_order(&Method::LeastSquares.score(&p), 1e-8);
    let w = sc_dominates(&p, 2, 1, &order, &bounds()).expect("witness exists");
    assert!(w.strict, "same opponents, one better result");
    assert!(w.validate(&p, 2, 1, &order));
}

#[test]
fn upset_square_aggregation_of_the_bottom_pair() {
    let p = upset_square();
    let merged = p.aggregate(2, 3).unwrap();
    assert_eq!(merged.journals(), &["J1", "J2", "J3∪J4"]);
    let expected = Problem::new(
        vec!["J1".into(), "J2".into(), "J3∪J4".into()],
        vec![
            vec![r(0), h(), h()],
            vec![h(), r(0), h()],
            vec![h(), h(), r(0)],
        ],
    )
    .unwrap();
    assert_eq!(merged.row(0), expected.row(0));
    assert_eq!(merged.row(1), expected.row(1));
    assert_eq!(merged.row(2), expected.row(2));
    assert!(merged.classify().all());
}

#[test]
fn upset_square_reduction_forces_a_total_tie() {
    let merged = upset_square().aggregate(2, 3).unwrap();
    let set = sc_admissible_set(&merged, &bounds()).unwrap();
    assert_eq!(set, vec![WeakOrder::total_tie(3)]);
    let scores = Method::LeastSquares.score(&merged);
    assert_scores(&scores.values, &[0.0, 0.0, 0.0]);
}

#[test]
fn upset_square_every_admissible_order_splits_the_top_pair() {
    let set = sc_admissible_set(&upset_square(), &bounds()).unwrap();
    assert!(!set.is_empty());
    for order in &set {
        assert_eq!(order.compare(0, 1), Relation::Above);
    }
    let ls_order = induced_order(&Method::LeastSquares.score(&upset_square()), 1e-8);
    assert!(set.contains(&ls_order));
}

#[test]
fn upset_square_yields_a_validating_certificate() {
    let p = upset_square();
    let cert = certify_impossibility(&p, (0, 1), (2, 3), &bounds())
        .unwrap()
        .expect("the clash is certifiable");
    assert_eq!(cert.target, (0, 1));
    assert_eq!(cert.merge, (2, 3));
    assert_eq!(cert.before_relation, Relation::Above);
    assert_eq!(cert.after_relation, Relation::Tied);
    assert!(!cert.before.is_empty());
    assert!(!cert.after.is_empty());
    assert_eq!(cert.target_after_merge(), (0, 1));
    assert!(cert.validate());
}

#[test]
fn upset_square_strict_ia_fails_for_least_squares_where_weak_passes() {
    let p = upset_square();
    let strict = check_ia(Method::LeastSquares, &p, IaMode::Strict, 1e-8).unwrap();
    assert_eq!(strict.len(), 1);
    assert_eq!(strict[0].merge, (2, 3));
    assert_eq!(strict[0].pair, (0, 1));
    assert_eq!(strict[0].before, Relation::Above);
    assert_eq!(strict[0].after, Relation::Tied);

    let weak = check_ia(Method::LeastSquares, &p, IaMode::Weak, 1e-8).unwrap();
    assert!(
        weak.is_empty(),
        "a strict preference fading to a tie is not a reversal"
    );
}

#[test]
fn upset_square_self_consistency_holds_for_least_squares_but_not_flat() {
    let p = upset_square();
    assert!(check_sc_method(Method::LeastSquares, &p, 1e-8, &bounds()).is_none());
    let violation = check_sc_method(Method::Flat, &p, 1e-8, &bounds()).expect("flat ties everyone");
    assert!(violation.witness.strict);
}
