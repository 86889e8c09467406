use proptest::prelude::*;
use vertex_core::laurent::{de_rham, LaurentElement, OneForm, ZnWeight};
use vertex_core::random::Sampler;
use vertex_core::scalar::{rat, ratio, ParamScalar};
use vertex_core::veronese::{
    build_model, charge_param, derivations, higher_witness, omega_membership, relation_defect, solve_charge, ChargeStatus,
    RelationPair, VeroneseModel,
};

#[test]
fn every_relation_instance_accepts_the_charge() {
    let k = charge_param();
    for big in 2..=6u32 {
        let m = VeroneseModel::new(2, big).unwrap();
        let res = solve_charge(&m).unwrap();
        assert_eq!(res.status, ChargeStatus::Unique);
        assert_eq!(res.charge, Some(rat(big as i64 + 1)));
        let value = ParamScalar::int(big as i64 + 1);
        assert_eq!(res.conditions.len(), 2 * big as usize);
        for cond in &res.conditions {
            for eq in &cond.equations {
                assert!(eq.substitute(&k, &value).is_zero(), "{} r={}: {}", cond.pair, cond.r, eq);
            }
            assert_eq!(cond.defect.form_part().zn_weight(big), ZnWeight::Residue(0));
        }
    }
}

#[test]
fn witnesses_are_invariant() {
    for (n, big) in [(3, 2), (3, 3), (4, 2), (3, 4)] {
        let m = VeroneseModel::new(n, big).unwrap();
        let w = higher_witness(&m).unwrap();
        assert_eq!(w.element.form_part().zn_weight(big), ZnWeight::Residue(0));
    }
}

#[test]
fn derivations_preserve_relations() {
    for big in 2..=4u32 {
        let m = VeroneseModel::new(2, big).unwrap();
        for d in [0, big as i32, 2 * big as i32] {
            let rep = derivations(&m, d).unwrap();
            assert!(rep.basis.iter().all(|t| t.preserves_relations(&m)), "N={big} d={d}");
            assert!(rep.generated, "N={big} d={d}");
        }
    }
    let m = VeroneseModel::new(3, 2).unwrap();
    let rep = derivations(&m, 0).unwrap();
    assert_eq!(rep.basis.len(), 9);
    assert!(rep.basis.iter().all(|t| t.preserves_relations(&m)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn relation_defects_are_pure_forms(
        big in 2u32..6,
        r_seed in any::<u32>(),
        second in any::<bool>(),
        num in -9i64..10,
        den in 1i64..4,
    ) {
        let m = VeroneseModel::new(2, big).unwrap();
        let pair = if second { RelationPair::E11E21 } else { RelationPair::E12E22 };
        let k = ParamScalar::from(ratio(num, den));
        let d = relation_defect(&m, r_seed % big, pair, &k).unwrap();
        prop_assert!(d.field_part().is_zero());
        prop_assert_eq!(d.form_part().zn_weight(big), ZnWeight::Residue(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn membership_is_monotone(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let big = s.pick(&[2u32, 3]);
        let m = build_model(2, big, 4 * big).unwrap();
        let a = s.pick(&[0i32, 1]) * big as i32;
        let mut w = OneForm::zero(2);
        for m_exp in m.ring_monomials(a) {
            let j = s.pick(&(0..m.generators().len()).collect::<Vec<_>>());
            let c = s.coefficient();
            w = &w + &de_rham(&m.generator(j)).mul_fn(&LaurentElement::mono(&m_exp)).scale(&c);
        }
        let degree = a + big as i32;
        prop_assert!(omega_membership(&w, &m, degree).unwrap());
        for j in 0..m.generators().len() {
            let shifted = w.mul_fn(&m.generator(j));
            prop_assert!(omega_membership(&shifted, &m, degree + big as i32).unwrap());
        }
    }
}
