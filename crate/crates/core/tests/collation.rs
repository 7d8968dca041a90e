use std::collections::BTreeSet;

use torsion_core::collate::{
    admissible_orders, attained_surface_orders, build_input, count_source, undecided_report,
};
use torsion_core::localbounds::global_collation_bound;
use torsion_core::exactnum::int::to_u64;

fn surface_list(source: &str, primes: &[u64]) -> BTreeSet<u64> {
    let cap = to_u64(&global_collation_bound(2, 1).unwrap()).unwrap();
    let input = build_input(count_source(source).unwrap().as_ref(), primes, 2).unwrap();
    admissible_orders(&input, cap).unwrap().admissible_orders
}

#[test]
fn theorem_list_from_three_censuses() {
    let mut expected: BTreeSet<u64> = (1..=16).collect();
    expected.extend([18, 19, 20, 22, 24, 25, 28, 30, 36, 48, 60, 72]);
    assert_eq!(surface_list("census", &[2, 3, 5]), expected);
    assert_eq!(surface_list("census-truncated", &[2, 3, 5]), expected);
}

#[test]
fn two_adic_shape_from_weil_intervals() {
    let cap = to_u64(&global_collation_bound(2, 1).unwrap()).unwrap();
    let input = build_input(count_source("weil-interval").unwrap().as_ref(), &[2, 3], 2).unwrap();
    let list = admissible_orders(&input, cap).unwrap();
    let (odd, a) = list.two_adic_shape();
    assert_eq!(odd, (1..=33).step_by(2).collect());
    assert_eq!(a, 5);
    for k in 0..=5 {
        assert!(list.admissible_orders.contains(&(1 << k)));
    }
    // The real censuses at 2 and 3 already force a <= 4.
    let census = build_input(count_source("census").unwrap().as_ref(), &[2, 3], 2).unwrap();
    assert_eq!(admissible_orders(&census, cap).unwrap().two_adic_shape().1, 4);
}

#[test]
fn eleven_undecided_values() {
    let cap = to_u64(&global_collation_bound(2, 1).unwrap()).unwrap();
    let input = build_input(count_source("census").unwrap().as_ref(), &[2, 3, 5], 2).unwrap();
    let list = admissible_orders(&input, cap).unwrap();
    let attained: BTreeSet<u64> = attained_surface_orders().into_iter().map(|(n, _)| n).collect();
    let open = undecided_report(&list, &attained).unwrap();
    assert_eq!(open, [11, 13, 14, 15, 22, 25, 28, 30, 48, 60, 72].into_iter().collect());
}
