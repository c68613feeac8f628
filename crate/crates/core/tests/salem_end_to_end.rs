use k3_obstruction::intpoly::IntPolynomial;
use k3_obstruction::obstruction::{check_square, equivalence_classes};
use k3_obstruction::salem::{
    build_witness, i_delta, is_salem_polynomial, realizable_nonprojective,
    realizable_nonprojective_with, salem_polynomials, Criterion, Realizability, RealizeOptions,
};

const NON_REALIZABLE_18: [&str; 2] = [
    "X^18 - X^17 + X^16 - X^15 - X^12 + X^11 - X^10 + X^9 - X^8 + X^7 - X^6 - X^3 + X^2 - X + 1",
    "X^18 - X^17 - X^15 - X^14 - X^12 + X^11 + X^10 + X^9 + X^8 + X^7 - X^6 - X^4 - X^3 - X + 1",
];

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

#[test]
fn degree_18_fixtures_are_not_realizable() {
    for s in NON_REALIZABLE_18 {
        let v = realizable_nonprojective(&p(s)).unwrap();
        assert_eq!(v.realizable, Realizability::NotRealizable, "{s}");
        assert_eq!(v.criterion, Criterion::Npr1018);
        assert!(v.witnesses.is_empty());
    }
}

#[test]
fn degree_10_witnesses_are_single_class() {
    let opts = RealizeOptions { witness: true };
    let mut checked = 0;
    for s in salem_polynomials(10, 1).unwrap() {
        if !check_square(&s).unwrap().holds() {
            continue;
        }
        let v = realizable_nonprojective_with(&s, opts).unwrap();
        assert_eq!(v.realizable, Realizability::Realizable, "{s}");
        let f = v.witness_f.expect("witness polynomial");
        assert_eq!(f.deg(), 22);
        assert!(f.exact_div(&s).is_some());
        for w in &v.witnesses {
            let f = build_witness(&s, w.l).unwrap();
            let idx = i_delta(&f, &s, 0).unwrap();
            assert!(
                equivalence_classes(&f, idx.i_plus, idx.i_minus)
                    .unwrap()
                    .is_weakest(),
                "{s}, l = {}",
                w.l
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn square_failures_get_a_witness() {
    let opts = RealizeOptions { witness: true };
    for d in [6, 10, 14] {
        let mut seen = 0;
        for s in salem_polynomials(d, 1).unwrap() {
            if check_square(&s).unwrap().holds() {
                continue;
            }
            let v = realizable_nonprojective_with(&s, opts).unwrap();
            assert_eq!(v.realizable, Realizability::Realizable, "{s}");
            let f = v.witness_f.expect("witness polynomial");
            assert_eq!(f.deg(), 22, "{s}");
            seen += 1;
        }
        assert!(seen > 0, "no square failures in degree {d}");
    }
}

/// Degree-22 Salem polynomials with palindromic coefficients in {-1, 0, 1}
/// and whether both |S(1)| and |S(-1)| are squares.
const DEGREE_22: [(&str, bool); 4] = [
    ("X^22 - X^21 - X^20 - X^19 - X^18 + X^17 - X^13 - X^12 - X^11 - X^10 - X^9 + X^5 - X^4 - X^3 - X^2 - X + 1", true),
    ("X^22 - X^21 - X^20 - X^19 - X^18 + X^16 - X^15 + X^14 - X^13 - X^12 - X^11 - X^10 - X^9 + X^8 - X^7 + X^6 - X^4 - X^3 - X^2 - X + 1", true),
    ("X^22 - X^20 - X^19 - X^18 - X^17 - X^16 - X^15 - X^14 - X^13 - X^12 - X^11 - X^10 - X^9 - X^8 - X^7 - X^6 - X^5 - X^4 - X^3 - X^2 + 1", false),
    ("X^22 - X^21 - X^20 - X^17 - X^16 - X^15 - X^14 - X^13 - X^12 - X^11 - X^10 - X^9 - X^8 - X^7 - X^6 - X^5 - X^2 - X + 1", false),
];

#[test]
fn degree_22_uses_the_square_test() {
    for (s, squares) in DEGREE_22 {
        let s = p(s);
        assert!(is_salem_polynomial(&s));
        let v = realizable_nonprojective(&s).unwrap();
        assert_eq!(v.criterion, Criterion::Degree22SquareTest);
        let expected = if squares {
            Realizability::Realizable
        } else {
            Realizability::NotRealizable
        };
        assert_eq!(v.realizable, expected, "{s}");
    }
}
