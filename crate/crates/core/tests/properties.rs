//! Invariants that must hold across the whole input space, checked on
//! randomized instances plus exhaustive sweeps of the smallest domains.

use jrank_core::axioms::{check_ia, IaMode};
use jrank_core::decomp::{canonical_decomposition, enumerate_decompositions, SearchBounds};
use jrank_core::methods::{connected_components, least_squares_residual, Method};
use jrank_core::order::enumerate_weak_orders;
use jrank_core::rational::rat;
use jrank_core::sc::{sc_admissible_set, sc_dominates};
use jrank_core::search::FamilySpec;
use jrank_core::{Problem, Rational};
use proptest::prelude::*;

fn zero() -> Rational {
    rat(0, 1)
}

/// A problem with `n` journals and cells drawn from `0..=max_num` over
/// denominators 1 and 2 — everything on the engine's default grid.
fn problem_of(n: usize, max_num: i64) -> impl Strategy<Value = Problem> {
    prop::collection::vec((0..=max_num, 1i64..=2), n * n).prop_map(move |cells| {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (num, den) = cells[i * n + j];
                        rat(num, den)
                    })
                    .collect()
            })
            .collect();
        Problem::from_rows(rows).unwrap()
    })
}

fn any_problem(max_num: i64) -> impl Strategy<Value = Problem> {
    (2usize..=5).prop_flat_map(move |n| problem_of(n, max_num))
}

/// Problems whose pairwise match totals are integers — exactly the ones
/// that decompose into unweighted layers on the default grid.
fn decomposable_problem() -> impl Strategy<Value = Problem> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec((0i64..=2, 0usize..=4), pairs),
                prop::collection::vec(0i64..=2, n),
            )
        })
        .prop_map(|(n, pair_cells, diag)| {
            let mut rows = vec![vec![zero(); n]; n];
            for (i, &d) in diag.iter().enumerate() {
                rows[i][i] = rat(d, 1);
            }
            let mut next = 0;
            // Each pair writes both triangle halves, so iterating `rows`
            // directly cannot replace the indices here.
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                for j in i + 1..n {
                    let (m, k) = pair_cells[next];
                    next += 1;
                    let a = rat((k as i64).min(2 * m), 2);
                    rows[i][j] = a;
                    rows[j][i] = rat(m, 1) - a;
                }
            }
            Problem::from_rows(rows).unwrap()
        })
}

/// An instance of the default four-state family together with a candidate
/// weak order on its journals.
fn family_instance_with_order() -> impl Strategy<Value = (Problem, usize)> {
    (3usize..=4).prop_flat_map(|n| {
        let spec = FamilySpec::new(n);
        let count = spec.instance_count().unwrap();
        let orders = enumerate_weak_orders(n).unwrap().len();
        (0..count, 0..orders).prop_map(move |(index, order_index)| {
            (FamilySpec::new(n).problem_at(index), order_index)
        })
    })
}

proptest! {
    #[test]
    fn matches_matrix_is_symmetric_and_additive(p in any_problem(6)) {
        let m = p.matches();
        for i in 0..p.n() {
            prop_assert_eq!(m.entry(i, i), p.citation(i, i) * rat(2, 1));
            for j in 0..p.n() {
                prop_assert_eq!(m.entry(i, j), m.entry(j, i));
                prop_assert_eq!(m.entry(i, j), p.citation(i, j) + p.citation(j, i));
            }
        }
    }

    #[test]
    fn transform_output_is_unweighted_loopless_extremal(p in any_problem(9)) {
        let flags = p.extremal_transform().classify();
        prop_assert!(flags.unweighted);
        prop_assert!(flags.loopless);
        prop_assert!(flags.extremal);
    }

    #[test]
    fn transform_is_idempotent(p in any_problem(9)) {
        let once = p.extremal_transform();
        prop_assert_eq!(once.extremal_transform(), once);
    }

    #[test]
    fn transform_agrees_with_the_share_rule(p in any_problem(9)) {
        // Independent formulation: a cell becomes 0, 1/2, or 1 according to
        // whether its share of the pair's matches falls below, inside, or
        // above the middle third. Diagonals are cleared.
        let image = p.extremal_transform();
        for i in 0..p.n() {
            for j in 0..p.n() {
                let expected = if i == j {
                    zero()
                } else {
                    let a = p.citation(i, j);
                    let m = a + p.citation(j, i);
                    if m == zero() {
                        zero()
                    } else {
                        let share = a / m;
                        if share < rat(1, 3) {
                            zero()
                        } else if share > rat(2, 3) {
                            rat(1, 1)
                        } else {
                            rat(1, 2)
                        }
                    }
                };
                prop_assert_eq!(image.citation(i, j), expected);
            }
        }
    }

    #[test]
    fn transform_and_classes_commute_with_relabeling(
        (p, perm) in (3usize..=5).prop_flat_map(|n| {
            (problem_of(n, 4), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let relabeled = p.permuted(&perm).unwrap();
        prop_assert_eq!(
            relabeled.extremal_transform(),
            p.extremal_transform().permuted(&perm).unwrap()
        );
        prop_assert_eq!(relabeled.classify(), p.classify());
    }

    #[test]
    fn scores_commute_with_relabeling(
        (p, perm) in (3usize..=5).prop_flat_map(|n| {
            (problem_of(n, 4), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        // `permuted` places old journal `perm[k]` at position k.
        for (method, tol) in [(Method::NetSum, 1e-12), (Method::LeastSquares, 1e-9)] {
            let direct = method.score(&p.permuted(&perm).unwrap()).values;
            let original = method.score(&p).values;
            for k in 0..p.n() {
                prop_assert!(
                    (direct[k] - original[perm[k]]).abs() <= tol,
                    "{} at {}: {} vs {}", method.name(), k, direct[k], original[perm[k]]
                );
            }
        }
    }

    #[test]
    fn enumerated_decompositions_are_valid(p in decomposable_problem()) {
        let bounds = SearchBounds::default();
        let found = enumerate_decompositions(&p, &bounds).unwrap();
        prop_assert!(!found.items.is_empty());
        for d in &found.items {
            prop_assert!(d.is_valid());
            for layer in &d.layers {
                prop_assert!(layer.problem.classify().unweighted);
            }
        }
        let canonical = canonical_decomposition(&p).unwrap();
        prop_assert!(canonical.is_valid());
        prop_assert!(
            found.items.iter().any(|d| d.layer_multiset() == canonical.layer_multiset()),
            "the canonical decomposition must be among the enumerated ones"
        );
    }

    #[test]
    fn unweighted_instances_decompose_only_trivially(
        (p, _) in family_instance_with_order()
    ) {
        // One decomposition only: the problem as its own single layer (the
        // zero problem's sole layer is the zero matrix, which is the problem
        // itself again).
        let found = enumerate_decompositions(&p, &SearchBounds::default()).unwrap();
        prop_assert_eq!(found.items.len(), 1);
        let only = &found.items[0];
        prop_assert_eq!(only.layers.len(), 1);
        prop_assert_eq!(&only.layers[0].problem, &p);
    }

    #[test]
    fn dominance_witnesses_always_validate((p, order_index) in family_instance_with_order()) {
        let order = enumerate_weak_orders(p.n()).unwrap().swap_remove(order_index);
        let bounds = SearchBounds::default();
        for i in 0..p.n() {
            for j in 0..p.n() {
                if i == j {
                    continue;
                }
                if let Some(w) = sc_dominates(&p, i, j, &order, &bounds) {
                    prop_assert!(
                        w.validate(&p, i, j, &order),
                        "found witness for {i} over {j} fails its own re-check"
                    );
                }
            }
        }
    }

    #[test]
    fn weak_ia_violations_embed_in_strict(
        p in (3usize..=4).prop_flat_map(|n| problem_of(n, 4)),
        method in prop_oneof![Just(Method::NetSum), Just(Method::LeastSquares)],
    ) {
        let weak = check_ia(method, &p, IaMode::Weak, 1e-8).unwrap();
        let strict = check_ia(method, &p, IaMode::Strict, 1e-8).unwrap();
        for v in &weak {
            prop_assert!(
                strict.iter().any(|s| {
                    s.merge == v.merge
                        && (s.pair == v.pair || s.pair == (v.pair.1, v.pair.0))
                }),
                "weak violation at merge {:?} pair {:?} missing from strict run",
                v.merge,
                v.pair
            );
        }
    }

    #[test]
    fn least_squares_is_zero_sum_with_tiny_residual(p in any_problem(6)) {
        let scores = Method::LeastSquares.score(&p);
        prop_assert!(scores.zero_sum_per_component);
        for component in connected_components(&p) {
            let sum: f64 = component.iter().map(|&i| scores.values[i]).sum();
            prop_assert!(sum.abs() <= 1e-8, "component {component:?} sums to {sum}");
        }
        let residual = least_squares_residual(&p, &scores.values);
        prop_assert!(residual <= 1e-8, "residual {residual}");
    }

    #[test]
    fn self_citations_never_move_scores(
        p in any_problem(4),
        diag in prop::collection::vec(0i64..=5, 5),
    ) {
        let n = p.n();
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { rat(diag[i], 1) } else { p.citation(i, j) })
                    .collect()
            })
            .collect();
        let with_loops = Problem::from_rows(rows).unwrap();
        for (method, tol) in [(Method::NetSum, 1e-12), (Method::LeastSquares, 1e-9)] {
            let a = method.score(&p).values;
            let b = method.score(&with_loops).values;
            for i in 0..n {
                prop_assert!((a[i] - b[i]).abs() <= tol);
            }
        }
    }
}

/// Ordered Bell numbers by the standard recurrence — an oracle the
/// enumerator has no share in.
fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    let mut binomial = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        binomial[i][0] = 1;
        for j in 1..=i {
            binomial[i][j] = binomial[i - 1][j - 1] + binomial[i - 1].get(j).copied().unwrap_or(0);
        }
    }
    for m in 1..=n {
        a[m] = (1..=m).map(|k| binomial[m][k] * a[m - k]).sum();
    }
    a[n]
}

#[test]
fn weak_order_counts_match_the_recurrence() {
    for n in 1..=5 {
        let orders = enumerate_weak_orders(n).unwrap();
        assert_eq!(orders.len() as u64, ordered_bell(n), "count at n={n}");
        let distinct: std::collections::BTreeSet<_> = orders.iter().collect();
        assert_eq!(distinct.len(), orders.len(), "duplicates at n={n}");
    }
    assert_eq!(ordered_bell(3), 13);
    assert_eq!(ordered_bell(4), 75);
}

#[test]
fn every_three_journal_instance_admits_an_order() {
    let spec = FamilySpec::new(3);
    let bounds = SearchBounds::default();
    for index in 0..spec.instance_count().unwrap() {
        let p = spec.problem_at(index);
        let set = sc_admissible_set(&p, &bounds).unwrap();
        assert!(!set.is_empty(), "instance {index} admits no order");
        let ls = jrank_core::methods::induced_order(&Method::LeastSquares.score(&p), 1e-8);
        assert!(
            set.contains(&ls),
            "instance {index} rejects the least-squares order"
        );
    }
}
