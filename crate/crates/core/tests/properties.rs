use gencliff::cubic::char0::Char0Structure;
use gencliff::cubic::CubicPresentation;
use gencliff::mpoly::rank_over_fraction_field;
use gencliff::ncalg::{NCPoly, Word};
use gencliff::parse::{parse_element, parse_field};
use gencliff::{Field, FieldElement, MPoly, Matrix, SymbolAlgebra};
use proptest::prelude::*;
use std::sync::OnceLock;

fn qrho() -> &'static Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| Field::rationals().adjoin_rho().unwrap())
}

fn structure() -> &'static Char0Structure {
    static S: OnceLock<Char0Structure> = OnceLock::new();
    S.get_or_init(|| Char0Structure::new(&CubicPresentation::from_ints(qrho(), [3, 1, 1, 1, 1, 1, 1]).unwrap()).unwrap())
}

fn ncpoly(terms: &[(Vec<u8>, i64)]) -> NCPoly {
    let st = structure();
    let ab = st.quotient.system.alphabet();
    let f = qrho();
    let mut p = NCPoly::zero(ab, f);
    for (w, c) in terms {
        p.add_term(Word(w.clone()), f.from_int(*c));
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(Vec<u8>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u8..3, 0..5), -4i64..5), 0..4)
}

fn element(f: &Field, digits: &[i64]) -> FieldElement {
    // a combination of powers of the top generator with small coefficients
    let g = match f.num_levels() {
        0 => f.from_int(2),
        n => f.generator(n - 1),
    };
    digits
        .iter()
        .rev()
        .fold(f.zero(), |acc, &d| &(&acc * &g) + &f.from_int(d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent(t in terms()) {
        let rs = &structure().quotient.system;
        let once = rs.normal_form(&ncpoly(&t));
        prop_assert_eq!(rs.normal_form(&once), once.clone());
    }

    #[test]
    fn normal_form_respects_products(a in terms(), b in terms()) {
        let rs = &structure().quotient.system;
        let (pa, pb) = (ncpoly(&a), ncpoly(&b));
        let direct = rs.normal_form(&pa.mul(&pb));
        let staged = rs.normal_form(&rs.normal_form(&pa).mul(&rs.normal_form(&pb)));
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn element_display_round_trips(d in prop::collection::vec(-30i64..30, 1..4), which in 0usize..4) {
        let spec = ["QQ.rho", "GF(3).ext(T^2 + 1)", "QQ.rho.ext(T^3 - 2)", "GF(7).rho"][which];
        let f = parse_field(spec).unwrap();
        let x = element(&f, &d);
        prop_assert_eq!(parse_element(&f, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn symbol_algebra_is_associative(c in prop::collection::vec(-5i64..6, 27), ab in (1i64..6, 1i64..6)) {
        let f = qrho();
        let alg = SymbolAlgebra::root_of_unity(3, f.from_int(ab.0), f.from_int(ab.1), f.rho().unwrap());
        let el = |k: usize| alg.from_coeffs(c[9 * k..9 * k + 9].iter().map(|&v| f.from_int(v)).collect()).unwrap();
        let (s, t, u) = (el(0), el(1), el(2));
        prop_assert_eq!(alg.mul(&alg.mul(&s, &t), &u), alg.mul(&s, &alg.mul(&t, &u)));
    }

    #[test]
    fn artin_schreier_symbol_is_associative(c in prop::collection::vec(0i64..3, 27), ab in (1i64..3, 0i64..3)) {
        let f = Field::prime(3).unwrap();
        let alg = SymbolAlgebra::artin_schreier(3, f.from_int(ab.0), f.from_int(ab.1));
        let el = |k: usize| alg.from_coeffs(c[9 * k..9 * k + 9].iter().map(|&v| f.from_int(v)).collect()).unwrap();
        let (s, t, u) = (el(0), el(1), el(2));
        prop_assert_eq!(alg.mul(&alg.mul(&s, &t), &u), alg.mul(&s, &alg.mul(&t, &u)));
    }

    #[test]
    fn fraction_free_rank_matches_row_reduction(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 1..5)) {
        let f = Field::rationals();
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| f.from_int(v)).collect()).collect()).unwrap();
        let constant = |v: i64| {
            let mut p = MPoly::zero(1, &f.zero());
            p.add_term(vec![0], f.from_int(v));
            p
        };
        let polys = rows.iter().map(|r| r.iter().map(|&v| constant(v)).collect()).collect();
        prop_assert_eq!(rank_over_fraction_field(polys), m.rank());
    }
}
