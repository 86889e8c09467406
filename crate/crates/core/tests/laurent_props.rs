use proptest::prelude::*;
use vertex_core::algebroid::Chart;
use vertex_core::laurent::{bracket, de_rham, de_rham_one, iota, iota2, lie, LaurentElement, VectorField};
use vertex_core::random::Sampler;

fn monomial_field(s: &mut Sampler, n: usize) -> VectorField {
    let f = s.laurent(&vec![(-2, 3); n], 1);
    let i = s.pick(&(0..n).collect::<Vec<_>>());
    let mut comps = vec![LaurentElement::zero(n); n];
    comps[i] = f;
    VectorField::from_components(comps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_jacobi(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let n = s.pick(&[1usize, 2, 3]);
        let (x, y, z) = (monomial_field(&mut s, n), monomial_field(&mut s, n), monomial_field(&mut s, n));
        let sum = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x))) + &bracket(&z, &bracket(&x, &y));
        prop_assert!(sum.is_zero());
        prop_assert!((&bracket(&x, &y) + &bracket(&y, &x)).is_zero());
    }

    #[test]
    fn cartan_magic(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let chart = s.pick(&[Chart::Affine(3), Chart::Overlap, Chart::U1]);
        let x = s.vector_field(chart);
        let w = s.one_form(chart);
        let rhs = &iota2(&x, &w.d()) + &de_rham(&iota(&x, &w));
        prop_assert_eq!(lie(&x, &w), rhs);
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let n = s.pick(&[1usize, 2, 3]);
        let f = s.laurent(&vec![(-3, 3); n], 4);
        prop_assert!(de_rham_one(&de_rham(&f)).is_zero());
        prop_assert!(de_rham(&f).d().is_zero());
    }

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let f = s.laurent(&[(-2, 2), (-2, 2)], 3);
        let g = s.laurent(&[(-2, 2), (-2, 2)], 3);
        for i in 0..2 {
            prop_assert_eq!((&f * &g).derive(i), &(&f.derive(i) * &g) + &(&f * &g.derive(i)));
        }
    }
}
