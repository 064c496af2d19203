mod common;

use common::*;
use matfun::odesolve::{companion, LinearODE};
use matfun::spectral::{characteristic_polynomial, find_roots_with_multiplicity, spectrum_of};
use matfun::{MatrixC, Polynomial, Tolerances};
use rand::Rng;

#[test]
fn char_poly_matches_eigenvalue_oracle() {
    let mut r = rng(21);
    for _ in 0..50 {
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..4).map(|_| r.gen_range(-2.0..2.0)).collect())
            .collect();
        let p = characteristic_polynomial(&MatrixC::from_real_rows(&rows).unwrap()).unwrap();
        let roots: Vec<_> = oracle_eigenvalues(&rows).into_iter().map(|z| (z, 1)).collect();
        let expect = Polynomial::from_roots(&roots);
        let scale = expect.norm_inf().max(1.0);
        assert!((&p - &expect).norm_inf() <= 1e-7 * scale);
    }
}

#[test]
fn companion_round_trip() {
    let mut r = rng(22);
    for _ in 0..50 {
        let n = r.gen_range(1..=7);
        let coeffs: Vec<_> = (0..n).map(|_| random_complex(&mut r, 2.0)).collect();
        let ode = LinearODE::new(coeffs).unwrap();
        let p = characteristic_polynomial(&companion(&ode)).unwrap();
        let scale = ode.char_poly().norm_inf();
        assert!((&p - &ode.char_poly()).norm_inf() <= 1e-10 * scale);
    }
}

#[test]
fn multiplicities_of_constructed_matrices() {
    let t = Tolerances::default();
    let mut r = rng(23);
    for _ in 0..60 {
        let n = r.gen_range(2..=6);
        let case = constructed_matrix(&mut r, n, 2);
        let s = spectrum_of(&case.a, &t).unwrap();
        let mut want = case.structure.multiplicities();
        want.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.lex_cmp(&b.0)));
        assert_eq!(s.dimension(), n);
        assert_eq!(s.multiplicities, want.iter().map(|w| w.1).collect::<Vec<_>>());
        for (got, (lambda, _)) in s.eigenvalues.iter().zip(&want) {
            assert!((*got - *lambda).abs() < 1e-5, "{got} vs {lambda}");
        }
    }
}

#[test]
fn roots_of_products_of_factors() {
    let t = Tolerances::default();
    let mut r = rng(24);
    for _ in 0..60 {
        let n = r.gen_range(1..=8);
        let nodes = random_nodes(&mut r, n, 2.0, 0.5);
        let s = find_roots_with_multiplicity(&Polynomial::from_roots(&nodes), &t).unwrap();
        assert_eq!(s.multiplicities.iter().sum::<usize>(), n);
        for (lambda, m) in &nodes {
            let k = s
                .eigenvalues
                .iter()
                .position(|z| (*z - *lambda).abs() < 1e-6)
                .unwrap_or_else(|| panic!("{lambda} missing from {:?}", s.nodes()));
            assert_eq!(s.multiplicities[k], *m);
        }
    }
}
