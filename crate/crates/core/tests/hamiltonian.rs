mod common;

use common::*;
use hqnn::{
    format_hamiltonian, ground_energy, parse_hamiltonian, PauliAxis, PauliHamiltonian, PauliTerm,
};
use proptest::prelude::*;

#[test]
fn expectation_matches_dense_quadratic_form() {
    let mut r = rng(21);
    for case in 0..100 {
        let n = 1 + case % 4;
        let h = random_hamiltonian(&mut r, n, 1 + case % 7);
        let psi = random_state(&mut r, n);
        let fast = h.expectation(&psi).unwrap();
        let dense = quadratic_form(&dense_hamiltonian(&h), &psi);
        assert!(
            (fast - dense).abs() <= 1e-10,
            "case {case}: {fast} vs {dense}"
        );
        let lo = ground_energy(&h).unwrap();
        assert!(fast >= lo - 1e-9, "case {case}: {fast} below {lo}");
    }
}

#[test]
fn library_dense_matrix_matches_kronecker_build() {
    let mut r = rng(22);
    for _ in 0..20 {
        let h = random_hamiltonian(&mut r, 3, 6);
        let a = h.to_dense().unwrap();
        let b = dense_hamiltonian(&h);
        assert!((&a - &b).norm() <= 1e-12);
        assert!((&a - a.adjoint()).norm() <= 1e-12);
    }
}

#[test]
fn apply_matches_dense_product() {
    let mut r = rng(23);
    for _ in 0..20 {
        let h = random_hamiltonian(&mut r, 3, 5);
        let psi = random_state(&mut r, 3);
        let out = h.apply(&psi).unwrap();
        let dense = dense_hamiltonian(&h) * to_dvec(&psi);
        assert!(max_abs_diff(out.amplitudes(), dense.as_slice()) <= 1e-12);
    }
}

#[test]
fn expectation_is_linear_in_coefficients() {
    let mut r = rng(24);
    let h1 = random_hamiltonian(&mut r, 3, 4);
    let h2 = random_hamiltonian(&mut r, 3, 4);
    let psi = random_state(&mut r, 3);
    let (a, b) = (0.7, -2.3);
    let scaled = |h: &PauliHamiltonian, s: f64| {
        h.terms()
            .iter()
            .map(|t| PauliTerm::new(s * t.coefficient(), t.axes().to_vec()).unwrap())
            .collect::<Vec<_>>()
    };
    let mut terms = scaled(&h1, a);
    terms.extend(scaled(&h2, b));
    let sum = PauliHamiltonian::from_terms(3, terms).unwrap();
    let lhs = sum.expectation(&psi).unwrap();
    let rhs = a * h1.expectation(&psi).unwrap() + b * h2.expectation(&psi).unwrap();
    assert!((lhs - rhs).abs() <= 1e-12);
}

#[test]
fn energies_lie_inside_the_spectrum() {
    let mut r = rng(25);
    for _ in 0..50 {
        let h = random_hamiltonian(&mut r, 3, 5);
        let ev = eigenvalues(&dense_hamiltonian(&h));
        let e = h.expectation(&random_state(&mut r, 3)).unwrap();
        assert!(e >= ev[0] - 1e-10 && e <= ev[ev.len() - 1] + 1e-10);
    }
}

#[test]
fn parse_reports_the_failing_line() {
    let err = parse_hamiltonian("qubits: 2\nterm: 1.0 XZ\nterm: 0.5 XQ\n").unwrap_err();
    assert_eq!(err.line, 3);
    assert!(parse_hamiltonian("term: 1.0 Z\n").is_err());
    assert!(parse_hamiltonian("qubits: 2\nterm: 1.0 Z\n").is_err());
}

fn axis() -> impl Strategy<Value = PauliAxis> {
    prop_oneof![
        Just(PauliAxis::I),
        Just(PauliAxis::X),
        Just(PauliAxis::Y),
        Just(PauliAxis::Z)
    ]
}

proptest! {
    #[test]
    fn format_parse_round_trip(
        terms in prop::collection::vec((-1e3f64..1e3, prop::collection::vec(axis(), 3)), 0..8),
        bond in prop::option::of(0.1f64..5.0),
    ) {
        let terms = terms
            .into_iter()
            .map(|(c, axes)| PauliTerm::new(c, axes).unwrap())
            .collect();
        let mut h = PauliHamiltonian::from_terms(3, terms).unwrap();
        if let Some(a) = bond {
            h = h.with_bond_length(a);
        }
        let back = parse_hamiltonian(&format_hamiltonian(&h)).unwrap();
        prop_assert_eq!(back, h);
    }
}
