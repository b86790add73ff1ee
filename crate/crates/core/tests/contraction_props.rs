mod common;

use common::strategies::positive_from;
use cstar_core::{
    cartesian, certify_ciric1, certify_ciric2, certify_eq1, certify_kannan, eq1_translation, kannan_translation,
    Algebra, Complex64, Element, Gauge, Map, MappingScenario, MetricSpace, PointDomain,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(0xc0_47ac7),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn real_element(dim: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec(-1.0f64..1.0, dim * dim)
        .prop_map(move |v| Element::from_matrix(DMatrix::from_fn(dim, dim, |i, j| Complex64::new(v[i * dim + j], 0.0))))
}

fn unit_space(dim: usize, weight: Element) -> MetricSpace {
    let domain = PointDomain::closed(0.0, 1.0, 0.125).unwrap();
    MetricSpace::new(domain, Algebra::real(dim), true, move |x, y| {
        weight.scale((x - y).abs())
    })
}

fn affine(rate: f64, shift: f64) -> Map {
    let shift = shift * (1.0 - rate);
    Map::new("affine", move |x| rate * x + shift)
}

/// Scalar scenario `q ≡ gauge`, `δ = k + x + y` for an affine map.
fn scalar_scenario(rate: f64, shift: f64, gauge: f64, k: f64) -> MappingScenario {
    MappingScenario::new(
        unit_space(1, Element::identity(1)),
        affine(rate, shift),
        Gauge::constant(Element::scalar(1, gauge)),
        Gauge::new(move |x, y| Element::scalar(1, k + x + y)),
    )
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn failures_persist_with_depth(
        rate in 0.0f64..1.0, shift in 0.0f64..1.0, gauge in 0.0f64..0.99, k in 0.0f64..2.0,
        n1 in 1u32..6, extra in 0u32..6,
    ) {
        let scn = scalar_scenario(rate, shift, gauge, k);
        let pairs = scn.default_pairs();
        let shallow = certify_ciric1(&scn.clone().with_max_power(n1), &pairs).unwrap();
        let deep = certify_ciric1(&scn.with_max_power(n1 + extra), &pairs).unwrap();
        if !shallow.passed {
            prop_assert!(!deep.passed);
            prop_assert_eq!(shallow.witness, deep.witness);
        }
        prop_assert!(deep.worst_margin <= shallow.worst_margin);
    }

    #[test]
    fn enlarging_delta_keeps_a_pass(
        rate in 0.0f64..1.0, shift in 0.0f64..1.0, gauge in 0.0f64..0.99, k in 0.0f64..2.0,
        g in real_element(2),
    ) {
        let weight = Element::identity(2);
        let base = MappingScenario::new(
            unit_space(2, weight),
            affine(rate, shift),
            Gauge::constant(Element::scalar(2, gauge)),
            Gauge::new(move |x, y| Element::scalar(2, k + x + y)),
        );
        let pairs = base.default_pairs();
        let before = certify_ciric1(&base, &pairs).unwrap();
        let extra = positive_from(&g);
        let mut bigger = base.clone();
        bigger.delta = Gauge::new(move |x, y| &Element::scalar(2, k + x + y) + &extra);
        let after = certify_ciric1(&bigger, &pairs).unwrap();
        prop_assert!(!before.passed || after.passed);
    }

    #[test]
    fn scalar_forms_agree(
        rate in 0.0f64..1.0, shift in 0.0f64..1.0, gauge in 0.0f64..0.99, k in 0.0f64..2.0,
    ) {
        let scn = scalar_scenario(rate, shift, gauge, k);
        let pairs = scn.default_pairs();
        let one = certify_ciric1(&scn, &pairs).unwrap();
        let two = certify_ciric2(&scn.abelian_type2(), &pairs).unwrap();
        prop_assert_eq!(one.passed, two.passed);
        prop_assert!((one.worst_margin - two.worst_margin).abs() <= 1e-12);
    }

    #[test]
    fn contraction_implies_type1(
        dim in 1usize..=3, g in real_element(3), w in real_element(3),
        rate in 0.0f64..1.0, shift in 0.0f64..1.0, size in 0.1f64..0.95,
    ) {
        let cut = |e: &Element| Element::from_matrix(e.matrix().view((0, 0), (dim, dim)).into_owned());
        let g = cut(&g);
        let gn = g.norm(cstar_core::NormMode::Operator);
        prop_assume!(gn > 1e-3);
        let a = g.scale(size / gn);
        let weight = &positive_from(&cut(&w)) + &Element::scalar(dim, 0.1);
        let space = unit_space(dim, weight);
        let t = affine(rate, shift);
        let pairs = cartesian(&space.domain.sample());
        let scn = eq1_translation(&space, &t, &a);
        if certify_eq1(&scn, &a, &pairs).unwrap().passed {
            prop_assert!(certify_ciric1(&scn, &pairs).unwrap().passed);
        }
    }

    #[test]
    fn kannan_implies_type2(
        dim in 1usize..=3, alpha in 0.0f64..0.49, rate in 0.0f64..1.0, shift in 0.0f64..1.0,
    ) {
        let space = unit_space(dim, Element::identity(dim));
        let t = affine(rate, shift);
        let pairs = cartesian(&space.domain.sample());
        let k = certify_kannan(&space, &t, &Element::scalar(dim, alpha), &pairs).unwrap();
        if k.certificate.passed {
            let scn = kannan_translation(&space, &t, k.gauge_b.as_ref().unwrap());
            prop_assert!(certify_ciric2(&scn, &pairs).unwrap().passed);
        }
    }

    #[test]
    fn passed_iff_no_witness(
        rate in 0.0f64..1.0, shift in 0.0f64..1.0, gauge in 0.0f64..0.99, k in 0.0f64..2.0,
    ) {
        let scn = scalar_scenario(rate, shift, gauge, k);
        let c = certify_ciric1(&scn, &scn.default_pairs()).unwrap();
        prop_assert_eq!(c.passed, c.witness.is_none());
        prop_assert_eq!(c.passed, c.worst_margin >= -1e-10);
    }
}
