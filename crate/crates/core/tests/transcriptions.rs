use qvp_core::checks::transcription::*;

use qvp_core::checks::latex::instantiate;
use qvp_core::bethe::{saddle_conifold, saddle_hilb, saddle_spinchain, saddle_spinchain_k1};
use qvp_core::symbolic::{parse_ratfun, Polynomial, RationalFunction, Var};

#[test]
fn hilb_matches_display() {
    for n in 1..=3 {
        assert!(matches_display(&saddle_hilb(n, false), HILB, &hilb_env(n, false)), "n={n}");
        assert!(matches_display(&saddle_hilb(n, true), HILB_MASS, &hilb_env(n, true)), "mass n={n}");
    }
}

#[test]
fn conifold_matches_display() {
    for m in 1..=3 {
        for v0 in 0..=2 {
            for v1 in 0..=2 {
                assert!(conifold_matches(&saddle_conifold(m, v0, v1), m, v0, v1), "m={m} v=({v0},{v1})");
            }
        }
    }
}

#[test]
fn spin_chain_matches_display() {
    for big_n in 1..=3 {
        for n in 1..=3 {
            for k in 1..=3 {
                assert!(matches_display(&saddle_spinchain(big_n, n, k), SPINCHAIN, &spin_env(big_n, n, k)));
            }
            assert!(matches_display(&saddle_spinchain_k1(big_n, n), SPINCHAIN, &spin_env(big_n, n, 1)));
        }
    }
}

#[test]
fn reader_spot_checks() {
    let ratio = |(label, n, d): (String, Polynomial, Polynomial)| {
        (label, RationalFunction::from_poly(n).div(&RationalFunction::from_poly(d)).unwrap())
    };
    let (label, f) = ratio(instantiate(conifold_line(Var::S1(1)), &conifold_env(1, 0, 1)(Var::S1(1))));
    assert_eq!(label, "zbar1");
    assert_eq!(f, parse_ratfun("1/(s1_1*(s1_1 - h3))").unwrap());
    let (label, f) = ratio(instantiate(HILB, &hilb_env(1, false)(Var::S(1))));
    assert_eq!((label.as_str(), f), ("zbar", parse_ratfun("1/s1").unwrap()));
    let (label, f) = ratio(instantiate(SPINCHAIN, &spin_env(1, 1, 2)(Var::S(1))));
    assert_eq!((label.as_str(), f), ("z", parse_ratfun("(s1 - a1)/(a1 - s1 + 2*h2)").unwrap()));
}

#[test]
fn mismatch_is_detected() {
    assert!(!matches_display(&saddle_spinchain(2, 2, 2), SPINCHAIN, &spin_env(2, 2, 1)));
    assert!(!conifold_matches(&saddle_conifold(2, 1, 1), 1, 1, 1));
}
