use gencliff::cubic::char0::build_representation;
use gencliff::cubic::CubicPresentation;
use gencliff::parse::{parse_matrix_rep, parse_phi};
use gencliff::repcheck::{divisibility_audit, exhaustive_gf3_2x2, is_representation, phi_at};
use gencliff::{CurvePoint, Field, FieldElement, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn no_two_by_two_representation_over_gf3() {
    let (tried, found) = exhaustive_gf3_2x2().unwrap();
    assert_eq!(tried, 81 * 81);
    assert!(found.is_empty());
    // consistent with the degree having to divide the dimension
    assert!(!divisibility_audit(3, 2));
}

#[test]
fn divisibility_table() {
    for d in 1..6 {
        for m in 1..13 {
            assert_eq!(divisibility_audit(d, m), m % d == 0);
        }
    }
}

fn random_invertible(f: &Field, rng: &mut ChaCha8Rng) -> Matrix<FieldElement> {
    loop {
        let p = Matrix::from_fn(3, 3, |_, _| f.random_element(rng));
        if p.rank() == 3 {
            return p;
        }
    }
}

#[test]
fn conjugation_preserves_representations() {
    let f = Field::rationals().adjoin_rho().unwrap();
    let l = f.extend(&[f.from_int(-2), f.zero(), f.zero(), f.one()]).unwrap();
    let pres = CubicPresentation::from_ints(&f, [0, 0, 0, 2, 0, 0, 1]).unwrap();
    let gp = pres.to_general();
    let rep = build_representation(&pres, &CurvePoint::new(f.zero(), f.one()).unwrap(), &l).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let p = random_invertible(&l, &mut rng);
        let conj = rep.conjugate(&p).unwrap();
        assert_eq!(is_representation(&gp, &conj).unwrap(), None);
    }
}

#[test]
fn witness_for_a_non_representation() {
    let f = Field::rationals();
    let gp = parse_phi(&f, "Z^2 - X^2 - Y^2").unwrap();
    let good = parse_matrix_rep(r#"{"matrices": [[["1","0"],["0","-1"]], [["0","1"],["1","0"]]]}"#, Some(&f)).unwrap();
    assert_eq!(is_representation(&gp, &good).unwrap(), None);
    let bad = parse_matrix_rep(r#"{"matrices": [[["1","0"],["0","-1"]], [["1","0"],["0","-1"]]]}"#, Some(&f)).unwrap();
    let w = is_representation(&gp, &bad).unwrap().unwrap();
    assert_eq!(w.monomial, "X*Y");
    // numerically: at X = Y = 1, M = 2A and M^2 - 2 = 2I
    let m = phi_at(&gp, &bad, &[f.one(), f.one()]).unwrap();
    assert_eq!(m, Matrix::scalar(2, f.from_int(2)));
}

#[test]
fn shape_errors() {
    let f = Field::rationals();
    let gp = parse_phi(&f, "Z^2 - X^2 - Y^2").unwrap();
    let one = parse_matrix_rep(r#"{"matrices": [[["1","0"],["0","-1"]]]}"#, Some(&f)).unwrap();
    assert!(is_representation(&gp, &one).is_err());
    assert!(parse_matrix_rep(r#"{"matrices": [[["1","0"],["0"]]]}"#, Some(&f)).is_err());
}
