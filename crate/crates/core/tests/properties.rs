use proptest::prelude::*;
use qvp_core::combinat::{build_stones, enum_degree_assignments, enum_plane_partitions, min_degree, FixedPoint, Shape};
use qvp_core::ktheory::RChargeData;
use qvp_core::symbolic::{gamma_factor, parse_polynomial, parse_ratfun, LinearForm, Polynomial, RationalFunction, Var};

const VARS: [Var; 3] = [Var::Hbar, Var::H1, Var::H2];

/// Polynomials with a few terms of degree ≤ 2 in ħ, h1, h2.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 0usize..3, 0u32..=2, 0usize..3, 0u32..=1), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(), |acc, (c, v, e, w, f)| {
            let t = &(&Polynomial::int(c) * &Polynomial::var(VARS[v]).pow(e)) * &Polynomial::var(VARS[w]).pow(f);
            &acc + &t
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn linear() -> impl Strategy<Value = LinearForm> {
    (-3i64..=3, -3i64..=3, -4i64..=4)
        .prop_map(|(a, b, c)| LinearForm::int_term(Var::H1, a) + LinearForm::int_term(Var::H2, b) + LinearForm::hbar(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_text_round_trips(p in poly()) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rational_field_laws(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let x = RationalFunction::from_poly(a).div(&RationalFunction::from_poly(b.clone())).unwrap();
        let y = RationalFunction::from_poly(c);
        prop_assert_eq!((&x * &y).div(&y).unwrap(), x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(parse_ratfun(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn gamma_factor_cocycle(u in linear(), d in -4i64..=4, e in -4i64..=4) {
        // skip arguments where a factor vanishes and the value is the 1/0 marker
        let shifted = u.clone() - LinearForm::hbar(2 * d);
        let lhs = &gamma_factor(&u, d) * &gamma_factor(&shifted, e);
        let rhs = gamma_factor(&u, d + e);
        prop_assume!(!lhs.is_zero() && !rhs.is_zero());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn degree_assignments_are_deterministic_and_graded() {
    let r = RChargeData::three_torus([2, -1, 1]).unwrap();
    for n in 1..=4 {
        for p in enum_plane_partitions(n) {
            let fp = FixedPoint::Plane(p);
            let stones = build_stones(Shape::Hilb, &fp, &r).unwrap();
            let min = min_degree(&stones);
            for total in min..=min + 2 {
                let a = enum_degree_assignments(&stones, total);
                assert_eq!(a, enum_degree_assignments(&stones, total));
                assert!(a.iter().all(|x| x.is_valid(&stones) && x.total(&stones) == total));
                let mut sorted = a.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), a.len());
            }
        }
    }
}
