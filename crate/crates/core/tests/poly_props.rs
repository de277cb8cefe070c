use num_bigint::BigInt;
use num_rational::BigRational;
use parke_taylor_core::poly::{groebner, normal_form, Ideal, Monomial, MonomialOrder, Polynomial};
use parke_taylor_core::pt::SigmaRing;
use parke_taylor_core::Budget;
use proptest::prelude::*;

fn poly(nvars: usize, max_terms: usize, max_deg: u16) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        Polynomial::from_terms(
            nvars,
            ts.into_iter().map(|(e, a, b)| (Monomial::from_exponents(&e), BigRational::new(a.into(), b.into()))),
        )
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-7i64..=7, 1i64..=3).prop_map(|(a, b)| BigRational::new(a.into(), b.into())), nvars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_string_round_trips(f in poly(6, 6, 3)) {
        let ring = SigmaRing::new(5).unwrap();
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let s = f.to_canonical_string(&|k| ring.name(k), order);
            prop_assert_eq!(ring.parse(&s).unwrap(), f.clone(), "{}", s);
        }
    }

    #[test]
    fn ring_operations_commute_with_evaluation(f in poly(3, 5, 3), g in poly(3, 5, 3), p in point(3)) {
        let (fv, gv) = (f.evaluate(&p).unwrap(), g.evaluate(&p).unwrap());
        prop_assert_eq!((&f + &g).evaluate(&p).unwrap(), &fv + &gv);
        prop_assert_eq!((&f - &g).evaluate(&p).unwrap(), &fv - &gv);
        prop_assert_eq!((&f * &g).evaluate(&p).unwrap(), &fv * &gv);
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(3, 4, 2), g in poly(3, 4, 2)) {
        prop_assume!(!g.is_zero());
        let q = (&f * &g).div_exact(&g, MonomialOrder::DegRevLex);
        prop_assert_eq!(q, Some(f));
    }

    #[test]
    fn generators_reduce_to_zero(gens in prop::collection::vec(poly(3, 3, 2), 1..=3)) {
        let b = Budget::default();
        let gb = groebner(&gens, MonomialOrder::DegRevLex, &b).unwrap();
        for f in &gens {
            prop_assert!(normal_form(f, &gb, MonomialOrder::DegRevLex).is_zero());
        }
        let mut i = Ideal::new(3, gens.clone()).unwrap();
        let prod = gens.iter().fold(Polynomial::one(3), |acc, f| &acc * f);
        prop_assert!(i.contains(&prod, &b).unwrap());
    }
}

#[test]
fn membership_distinguishes_a_principal_ideal() {
    let b = Budget::default();
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut i = Ideal::new(2, vec![&(&x * &x) - &y]).unwrap();
    assert!(!i.contains(&x, &b).unwrap());
    let m = &(&(&x * &x) * &x) - &(&x * &y);
    assert!(i.contains(&m, &b).unwrap());
    let c = Polynomial::constant(2, BigRational::from(BigInt::from(3)));
    assert!(!i.contains(&c, &b).unwrap());
}
