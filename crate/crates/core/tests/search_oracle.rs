//! Cross-checks the partition search against a naive enumerator that shares
//! no code with it.

mod common;

use common::{all_classes_thick, min_thick_brute, naive_partition as naive};
use thicket::search::{
    solve, table_monotonicity_violations, thick_number, thick_number_table, verify_certificate,
    CellStatus, SearchProblem, Status, DEFAULT_BUDGET,
};

fn check(m: usize, mu: usize, nu: usize, p: usize) {
    let prob = SearchProblem::new(m, mu, nu, p).unwrap();
    let out = solve(&prob, DEFAULT_BUDGET).unwrap();
    let expected = naive(m, mu, nu, p).is_some();
    assert_ne!(out.status, Status::BudgetExceeded, "{prob:?}");
    assert_eq!(out.status == Status::Sat, expected, "{prob:?}");
    if let Some(g) = out.certificate {
        assert!(verify_certificate(&g, &prob).unwrap().pass());
        let cells: Vec<usize> = (0..m * m).map(|i| g.get(i / m, i % m).unwrap()).collect();
        assert!(all_classes_thick(&cells, m, mu, nu, p));
    }
}

#[test]
fn agrees_with_naive_enumerator_up_to_three() {
    for m in 1..=3 {
        for mu in 1..=m {
            for nu in 1..=m {
                for p in 1..=3 {
                    check(m, mu, nu, p);
                }
            }
        }
    }
}

#[test]
fn agrees_with_naive_enumerator_on_four_two_two() {
    check(4, 2, 2, 2);
    assert!(naive(4, 2, 2, 2).is_some());
}

#[test]
fn four_two_two_value() {
    let cell = thick_number(4, 2, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(cell.status, CellStatus::Exact);
    // p = T works, p = T + 1 does not, per the naive enumerator
    assert!(naive(4, 2, 2, cell.t).is_some());
    let over = solve(&SearchProblem::new(4, 2, 2, cell.t + 1).unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(over.status, Status::Unsat);
}

#[test]
fn table_is_monotone() {
    let cells = thick_number_table(4, 4, DEFAULT_BUDGET).unwrap();
    assert!(table_monotonicity_violations(&cells).is_empty());
    for c in &cells {
        let prob = SearchProblem::new(c.m, c.mu, c.nu, c.t).unwrap();
        assert!(verify_certificate(&c.certificate, &prob).unwrap().pass());
    }
}

#[test]
fn size_bound_is_a_lower_bound() {
    for m in 1..=4 {
        for mu in 1..=m {
            for nu in 1..=m {
                let exact = min_thick_brute(m, mu, nu);
                assert!(thicket::search::min_thick_size(m, mu, nu) <= exact, "m={m} mu={mu} nu={nu}");
            }
        }
    }
}
