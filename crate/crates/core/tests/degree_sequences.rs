use num_rational::BigRational;
use torsion_core::modcurves::tables::{corrected_cyclic_row, corrected_full_two_row, format_row};
use torsion_core::modcurves::{
    cm_j_invariants, degree_sequence, full_two_torsion_degree_sequence, modular_degree,
    DegreeSequence,
};

fn js() -> Vec<BigRational> {
    cm_j_invariants().into_iter().map(BigRational::from_integer).collect()
}

fn sum_rule(d: usize, seqs: &[DegreeSequence]) {
    assert_eq!(seqs[0].total() * 3, d, "j=0");
    assert_eq!(seqs[1].total() * 2, d, "j=1728");
    assert!(seqs[2..].iter().all(|s| s.total() == d));
}

#[test]
fn cyclic_rows() {
    for n in 4..=13 {
        let seqs: Vec<DegreeSequence> = js().iter().map(|j| degree_sequence(n, j).unwrap()).collect();
        sum_rule(modular_degree(n as u64) as usize, &seqs);
        assert_eq!(
            format_row(&seqs),
            format_row(&corrected_cyclic_row(n).unwrap()),
            "Z/{n}"
        );
    }
}

#[test]
fn full_two_torsion_rows() {
    for m in 2..=4 {
        let seqs: Vec<DegreeSequence> =
            js().iter().map(|j| full_two_torsion_degree_sequence(m, j).unwrap()).collect();
        sum_rule(2 * modular_degree(2 * m as u64) as usize, &seqs);
        assert_eq!(
            format_row(&seqs),
            format_row(&corrected_full_two_row(m).unwrap()),
            "Z/2 x Z/{}",
            2 * m
        );
    }
}

#[test]
fn non_cm_j_has_generic_fibre() {
    let j = BigRational::from_integer((-98304).into());
    assert_eq!(degree_sequence(7, &j).unwrap().total(), 24);
}
