use proptest::prelude::*;
use vertex_core::algebroid::{symbol, Algebroid, Chart, WeightOneElement};
use vertex_core::geometry::{extend_section, h1_class, transition, Direction};
use vertex_core::random::Sampler;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transition_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let v = s.weight_one(Chart::Overlap);
        let om = s.gluing_form(3);
        let there = transition(&v, &om, Direction::OneToTwo).unwrap();
        prop_assert_eq!(transition(&there, &om, Direction::TwoToOne).unwrap(), v.clone());
        prop_assert_eq!(symbol(&there).0, symbol(&v).0);
    }

    #[test]
    fn h1_kills_chart_regular_functions(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let chart = s.pick(&[Chart::U1, Chart::U2]);
        let f = s.chart_function(chart, 4);
        prop_assert!(h1_class(&f).is_zero());
        let om = s.gluing_form(4);
        prop_assert_eq!(h1_class(&om.coefficient()), om.clone());
        prop_assert_eq!(h1_class(&(&om.coefficient() + &f)), om);
    }

    #[test]
    fn extensions_are_consistent(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let f = s.laurent(&Sampler::chart_ranges(Chart::U1), 1);
        let i = s.pick(&[0usize, 1]);
        let field = WeightOneElement::field(Chart::U1, i, f);
        let om = s.gluing_form(2);
        if let Some(ext) = extend_section(&field, &om).unwrap() {
            prop_assert!(ext.section.is_consistent());
            prop_assert_eq!(symbol(&ext.section.u1).0, symbol(&field).0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn transition_preserves_products(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let u = s.weight_one(Chart::Overlap);
        let v = s.weight_one(Chart::Overlap);
        let om = s.gluing_form(3);
        let alg = Algebroid::default();
        let tu = transition(&u, &om, Direction::OneToTwo).unwrap();
        let tv = transition(&v, &om, Direction::OneToTwo).unwrap();
        let p0 = alg.vprod0(&u, &v).unwrap();
        prop_assert_eq!(transition(&p0, &om, Direction::OneToTwo).unwrap(), alg.vprod0(&tu, &tv).unwrap());
        prop_assert_eq!(alg.vprod(&u, 1, &v).unwrap(), alg.vprod(&tu, 1, &tv).unwrap());
    }
}
