use proptest::prelude::*;
use vertex_core::algebroid::{symbol, Algebroid, Chart, WeightOneElement};
use vertex_core::laurent::{bracket, de_rham};
use vertex_core::random::Sampler;

const CHARTS: [Chart; 4] = [Chart::Affine(1), Chart::Affine(2), Chart::Affine(3), Chart::Overlap];

fn pair(seed: u64) -> (WeightOneElement, WeightOneElement) {
    let mut s = Sampler::new(seed);
    let chart = s.pick(&CHARTS);
    (s.weight_one(chart), s.weight_one(chart))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_forms_match_oracle(seed in any::<u64>()) {
        let (u, v) = pair(seed);
        let rules = Algebroid::unchecked();
        let oracle = Algebroid::default();
        for n in [0, 1] {
            prop_assert_eq!(rules.vprod(&u, n, &v).unwrap(), oracle.oracle_product(&u, n, &v).unwrap());
        }
    }

    #[test]
    fn weight_zero_action_matches_oracle(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let chart = s.pick(&CHARTS);
        let f = s.chart_function(chart, 2);
        let v = s.weight_one(chart);
        prop_assert!(Algebroid::default().mul_weight0(&f, &v).is_ok());
    }

    #[test]
    fn pairing_is_symmetric(seed in any::<u64>()) {
        let (u, v) = pair(seed);
        let alg = Algebroid::unchecked();
        prop_assert_eq!(alg.vprod1(&u, &v).unwrap(), alg.vprod1(&v, &u).unwrap());
    }

    #[test]
    fn symbol_of_bracket(seed in any::<u64>()) {
        let (u, v) = pair(seed);
        let w = Algebroid::unchecked().vprod0(&u, &v).unwrap();
        prop_assert_eq!(symbol(&w).0, bracket(&u.field_part(), &v.field_part()));
    }

    #[test]
    fn weight_zero_associativity_defect(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let chart = s.pick(&CHARTS);
        let n = chart.nvars();
        let f = s.chart_function(chart, 2);
        let g = s.chart_function(chart, 2);
        let h = s.chart_function(chart, 2);
        let i = s.pick(&(0..n).collect::<Vec<_>>());
        let v = WeightOneElement::field(chart, i, h.clone());
        let alg = Algebroid::default();
        let nested = alg.mul_weight0(&f, &alg.mul_weight0(&g, &v).unwrap()).unwrap();
        let direct = alg.mul_weight0(&(&f * &g), &v).unwrap();
        let defect = nested.try_sub(&direct).unwrap();
        let expected = (&de_rham(&f).mul_fn(&g.derive(i)) + &de_rham(&g).mul_fn(&f.derive(i))).mul_fn(&h);
        prop_assert!(defect.field_part().is_zero());
        prop_assert_eq!(defect.form_part(), &expected);
    }

    #[test]
    fn skew_symmetry_of_zero_product(seed in any::<u64>()) {
        let (u, v) = pair(seed);
        let alg = Algebroid::default();
        let sum = alg.vprod0(&u, &v).unwrap().try_add(&alg.vprod0(&v, &u).unwrap()).unwrap();
        let exact = WeightOneElement::form(u.chart(), de_rham(&alg.vprod1(&u, &v).unwrap()));
        prop_assert_eq!(sum, exact);
    }
}
