use proptest::prelude::*;
use vertex_core::scalar::{ratio, solve_linear_system, Param, ParamScalar, ParamSet};

fn params() -> (Param, Param) {
    let s = ParamSet::new(["k", "l"]);
    (s.get("k").unwrap(), s.get("l").unwrap())
}

fn scalar() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec((0u32..3, 0u32..3, -6i64..7, 1i64..4), 0..4).prop_map(|terms| {
        let (k, l) = params();
        let mut out = ParamScalar::zero();
        for (ek, el, n, d) in terms {
            let m = &ParamScalar::param(&k).pow(ek) * &ParamScalar::param(&l).pow(el);
            out += &m.scale(&ratio(n, d));
        }
        out
    })
}

fn linear() -> impl Strategy<Value = ParamScalar> {
    (-4i64..5, -4i64..5, -4i64..5).prop_map(|(a, b, c)| {
        let (k, l) = params();
        &(&ParamScalar::param(&k).scale(&ratio(a, 1)) + &ParamScalar::param(&l).scale(&ratio(b, 1)))
            + &ParamScalar::int(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ParamScalar::one(), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solve_is_invariant_under_rescaling(
        eqs in prop::collection::vec(linear(), 1..4),
        scales in prop::collection::vec((1i64..5, 1i64..5, any::<bool>()), 4),
    ) {
        let (k, l) = params();
        let unknowns = [k, l];
        let base = solve_linear_system(&eqs, &unknowns).unwrap();
        let rescaled: Vec<ParamScalar> = eqs
            .iter()
            .zip(&scales)
            .map(|(e, &(n, d, neg))| e.scale(&ratio(if neg { -n } else { n }, d)))
            .collect();
        prop_assert_eq!(&base, &solve_linear_system(&rescaled, &unknowns).unwrap());
        let mut doubled = eqs.clone();
        doubled.extend(rescaled);
        prop_assert_eq!(&base, &solve_linear_system(&doubled, &unknowns).unwrap());
    }
}
