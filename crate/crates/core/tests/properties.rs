//! Property-based invariants of the exact arithmetic layer.

use proptest::prelude::*;

use spheroidal_core::exact::{
    fueter_apply, rat, Axis, FueterVariant, Monomial3, QPoly, RatPoly, Rational, ScalarPoly,
    TauPoly,
};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn arb_tau_poly() -> impl Strategy<Value = TauPoly> {
    prop::collection::vec(arb_rational(), 0..3).prop_map(RatPoly::from_coeffs)
}

fn arb_scalar_poly() -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), arb_tau_poly()), 0..6).prop_map(|terms| {
        let mut p = ScalarPoly::zero();
        for ((a, b, c), coeff) in terms {
            p = &p + &ScalarPoly::term(Monomial3::new(a, b, c), coeff);
        }
        p
    })
}

fn arb_qpoly() -> impl Strategy<Value = QPoly> {
    (arb_scalar_poly(), arb_scalar_poly(), arb_scalar_poly()).prop_map(|(e0, e1, e2)| {
        QPoly::from_components(e0, e1, e2, ScalarPoly::zero())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold_exactly(
        p in arb_scalar_poly(),
        q in arb_scalar_poly(),
        r in arb_scalar_poly(),
    ) {
        // associativity and distributivity, exact equality
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p - &p, ScalarPoly::zero());
    }

    #[test]
    fn conjugation_is_an_involution(q in arb_qpoly()) {
        prop_assert_eq!(q.conj().conj(), q.clone());
        prop_assert_eq!(&q.conj() + &q, QPoly::from_scalar(q.e0.scale(&rat(2, 1))));
    }

    #[test]
    fn fueter_operators_sum_to_twice_d0(q in arb_qpoly()) {
        let d = fueter_apply(&q, FueterVariant::D).unwrap();
        let dbar = fueter_apply(&q, FueterVariant::Dbar).unwrap();
        let sum = &d + &dbar;
        let twice_d0 = QPoly::from_components(
            q.e0.partial_derivative(Axis::X0).scale(&rat(2, 1)),
            q.e1.partial_derivative(Axis::X0).scale(&rat(2, 1)),
            q.e2.partial_derivative(Axis::X0).scale(&rat(2, 1)),
            ScalarPoly::zero(),
        );
        prop_assert_eq!(sum, twice_d0);
    }

    #[test]
    fn laplacian_equals_fueter_factorization(p in arb_scalar_poly()) {
        let step = fueter_apply(&QPoly::from_scalar(p.clone()), FueterVariant::Dbar).unwrap();
        let composed = fueter_apply(&step, FueterVariant::D).unwrap();
        prop_assert_eq!(composed.e0, p.laplacian());
        prop_assert!(composed.e1.is_zero());
        prop_assert!(composed.e2.is_zero());
        prop_assert!(composed.e3.is_zero());
    }

    #[test]
    fn derivatives_commute(p in arb_scalar_poly()) {
        let a = p.partial_derivative(Axis::X0).partial_derivative(Axis::X1);
        let b = p.partial_derivative(Axis::X1).partial_derivative(Axis::X0);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip_is_identity(q in arb_qpoly()) {
        let text = serde_json::to_string(&q).unwrap();
        let back: QPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn exact_and_float_evaluation_agree(p in arb_scalar_poly()) {
        // evaluate at a modest rational point both ways
        let x = [rat(1, 2), rat(-1, 3), rat(1, 5)];
        let tau = rat(1, 4);
        let exact = p.eval_exact(&x, &tau);
        let float = p.eval_f64([0.5, -1.0 / 3.0, 0.2], 0.25);
        let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        let scale = exact_f.abs().max(1.0);
        prop_assert!((exact_f - float).abs() / scale < 1e-12);
    }
}
