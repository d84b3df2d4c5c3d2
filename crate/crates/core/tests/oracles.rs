use std::collections::BTreeMap;

use primdeg::constructions::{
    a0, a_k, brute_force_matrix_exponent_histogram, max_k, monomial_lift, small_exponent_matrix,
};
use primdeg::dense::{densify, to_pattern, DenseTensor};
use primdeg::digraph::{frobenius_representable, matrix_gamma, walk_decomposition, wielandt_matrix};
use primdeg::random::{random_dense, random_int_tensor, random_matrix, seeded};
use primdeg::{wielandt_bound, IndexSet, PatternMatrix};

/// Least `k <= w_n` with `A^k > 0`, by repeated boolean matrix products.
fn power_oracle(m: &PatternMatrix) -> Option<usize> {
    let n = m.dim();
    let a: Vec<Vec<bool>> = (1..=n).map(|i| (1..=n).map(|j| m.get(i, j)).collect()).collect();
    let mut p = a.clone();
    for k in 1..=wielandt_bound(n) {
        if p.iter().all(|row| row.iter().all(|&x| x)) {
            return Some(k);
        }
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|l| p[i][l] && a[l][j])).collect())
            .collect();
    }
    None
}

#[test]
fn brute_force_histograms_match_power_oracle() {
    // Frozen from an independent enumeration with boolean matrix powers.
    let n3: BTreeMap<usize, u64> = [(1, 1), (2, 72), (3, 42), (4, 18), (5, 6)].into();
    let n4: BTreeMap<usize, u64> =
        [(1, 1), (2, 6002), (3, 13596), (4, 4428), (5, 1188), (6, 312), (9, 24), (10, 24)].into();
    assert_eq!(brute_force_matrix_exponent_histogram(2).unwrap(), [(1, 1), (2, 2)].into());
    assert_eq!(brute_force_matrix_exponent_histogram(3).unwrap(), n3);
    assert_eq!(brute_force_matrix_exponent_histogram(4).unwrap(), n4);
}

#[test]
fn matrix_gamma_matches_power_oracle() {
    let mut rng = seeded(11);
    for _ in 0..300 {
        let n = 1 + (rand::Rng::gen_range(&mut rng, 0..6));
        let m = random_matrix(&mut rng, n, 0.35).unwrap();
        assert_eq!(matrix_gamma(&m), power_oracle(&m), "{m:?}");
    }
    for n in 3..=8 {
        assert_eq!(power_oracle(&wielandt_matrix(n).unwrap()), Some(wielandt_bound(n)));
    }
    for (n, t) in [(4, 4), (5, 3), (6, 1), (7, 7)] {
        assert_eq!(power_oracle(&small_exponent_matrix(n, t).unwrap()), Some(t));
    }
}

#[test]
fn monomial_states_are_walk_frontiers() {
    let mut rng = seeded(5);
    for _ in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let m = random_matrix(&mut rng, n, 0.3).unwrap();
        let rev = m.reversed_digraph();
        for order in [2, 3, 5] {
            let t = monomial_lift(&m, order).unwrap();
            for j in 1..=n {
                let states = t.iterate_column(j, 12).unwrap();
                for (k, s) in states.iter().enumerate() {
                    assert_eq!(*s, rev.exact_length_frontier(j, k + 1).unwrap());
                }
            }
        }
    }
}

#[test]
fn walk_decomposition_agrees_with_frontiers() {
    for n in 3..=8 {
        let rev = wielandt_matrix(n).unwrap().reversed_digraph();
        for total in 0..=wielandt_bound(n) + 1 {
            let frontier = rev.exact_length_frontier(n - 1, total).unwrap();
            for u in 1..=n {
                let w = walk_decomposition(n, u, total).unwrap();
                assert_eq!(w.is_some(), frontier.contains(u), "n={n} u={u} L={total}");
                if let Some(w) = w {
                    assert_eq!(w.length(n), total);
                }
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn frobenius_numbers() {
    for a in 2..=30u64 {
        for b in 2..=30u64 {
            if gcd(a, b) != 1 {
                continue;
            }
            let f = a * b - a - b;
            assert!(!frobenius_representable(a, b, f), "a={a} b={b}");
            for t in f + 1..=f + a + b {
                assert!(frobenius_representable(a, b, t), "a={a} b={b} t={t}");
            }
        }
    }
}

#[test]
fn a_k_follows_a0_then_fills() {
    for n in 3..=6 {
        let base = a0(n, n).unwrap().iterate_column(n - 1, max_k(n)).unwrap();
        for k in 1..=max_k(n) {
            for order in [n, n + 1, n + 3] {
                let t = a_k(order, n, k).unwrap();
                assert_eq!(t.majorization_pattern(), wielandt_matrix(n).unwrap());
                let states = t.iterate_column(n - 1, k + 1).unwrap();
                assert_eq!(&states[..k], &base[..k]);
                assert!(states[k].is_full());
                // S_1(n-1) = S_2(n-2) = ... = S_{n-1}(1) = S_n(n)
                let chain_head = states[0];
                for step in 2..n {
                    let col = n - step;
                    assert_eq!(t.iterate_column(col, step).unwrap()[step - 1], chain_head);
                }
                assert_eq!(t.iterate_column(n, n).unwrap()[n - 1], chain_head);
                let report = t.analyze();
                assert_eq!(report.gamma, Some(n + k));
                assert_eq!(report.gamma_by_column[n - 1], Some(n + k));
            }
        }
    }
}

#[test]
fn dense_round_trip_and_scan() {
    let mut rng = seeded(21);
    for _ in 0..50 {
        let a = random_dense(&mut rng, 3, 4).unwrap();
        let t = to_pattern(&a).unwrap();
        // Direct scan: the row's minimal sets are exactly the minimal
        // underlying sets among positive entries.
        for u in 1..=4 {
            let sets: Vec<IndexSet> = a
                .positive_entries()
                .filter(|(idx, _)| idx[0] == u)
                .map(|(idx, _)| IndexSet::from_indices(4, idx[1..].iter().copied()).unwrap())
                .collect();
            let minimal: Vec<IndexSet> = sets
                .iter()
                .filter(|s| !sets.iter().any(|o| o.is_subset(s) && o != *s))
                .copied()
                .collect();
            for s in &minimal {
                assert!(t.row(u).contains(s));
            }
            assert!(t.row(u).iter().all(|s| minimal.contains(s)));
        }
        assert_eq!(to_pattern(&densify(&t).unwrap()).unwrap(), t);
    }
    let t = a_k(4, 4, 5).unwrap();
    assert_eq!(to_pattern(&densify(&t).unwrap()).unwrap().analyze(), t.analyze());
}

#[test]
fn t_map_iterates_track_states() {
    let mut rng = seeded(8);
    for _ in 0..40 {
        let a = random_dense(&mut rng, 3, 3).unwrap();
        let t = to_pattern(&a).unwrap();
        for j in 1..=3 {
            let states = t.iterate_column(j, 5).unwrap();
            let mut x = DenseTensor::<f64>::basis_vector(3, j).unwrap();
            for s in &states {
                if x.values().iter().all(|v| *v == 0.0) {
                    assert!(s.is_empty());
                    continue;
                }
                x = a.t_map(&x).unwrap();
                assert_eq!(x.support_set().unwrap(), *s);
            }
        }
    }
}

#[test]
fn product_is_associative_on_integers() {
    let mut rng = seeded(17);
    for _ in 0..20 {
        let a = random_int_tensor(&mut rng, 3, 2, 3).unwrap();
        let left = a.shao_product(&a).unwrap().shao_product(&a).unwrap();
        let right = a.shao_product(&a.shao_product(&a).unwrap()).unwrap();
        assert_eq!(left.order(), 9);
        assert_eq!(left, right);
    }
    // Mixed orders: (matrix * order-3) * vector.
    let p = random_int_tensor(&mut rng, 2, 3, 4).unwrap();
    let q = random_int_tensor(&mut rng, 3, 3, 4).unwrap();
    let x = random_int_tensor(&mut rng, 1, 3, 4).unwrap();
    assert_eq!(
        p.shao_product(&q).unwrap().shao_product(&x).unwrap(),
        p.shao_product(&q.shao_product(&x).unwrap()).unwrap()
    );
}

#[test]
fn oracle_supports_agree() {
    let mut rng = seeded(99);
    for trial in 0..60 {
        let order = 2 + trial % 2;
        let n = 1 + trial % 4;
        let a = random_dense(&mut rng, order, n).unwrap();
        let t = to_pattern(&a).unwrap();
        let recursion = a.support().majorization_recursion(5).unwrap();
        for j in 1..=n {
            let states = t.iterate_column(j, 5).unwrap();
            let xs = a.apply_to_basis(j, 5).unwrap();
            for k in 0..5 {
                assert_eq!(recursion[k].column(j), states[k]);
                assert_eq!(xs[k].support_set().unwrap(), states[k]);
            }
        }
        if order == 2 || n <= 3 {
            let sup = a.support();
            for k in 1..=3 {
                let mk = sup.power(k).unwrap().majorization_pattern().unwrap();
                assert_eq!(mk, recursion[k - 1]);
            }
        }
    }
}
