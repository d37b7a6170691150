use std::sync::Arc;

use lieform_core::graded::{basis_of_degree, GeneratorSet, GradedElement};
use lieform_core::linalg::int;
use lieform_core::sullivan::{desk_instances, PureSullivan};
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct Shape {
    u: Vec<u32>,
    v: Vec<u32>,
    coeffs: Vec<i64>,
}

fn shape() -> impl Strategy<Value = Shape> {
    (
        proptest::collection::vec(prop_oneof![Just(1u32), Just(3), Just(5)], 1..=3),
        proptest::collection::vec(prop_oneof![Just(1u32), Just(3)], 1..=2),
        proptest::collection::vec(-2i64..=2, 64),
    )
        .prop_map(|(u, v, coeffs)| Shape { u, v, coeffs })
}

fn gens(prefix: &str, degrees: &[u32]) -> Arc<GeneratorSet> {
    GeneratorSet::new(
        degrees.iter().enumerate().map(|(i, d)| (format!("{prefix}{i}"), *d)).collect(),
        vec![],
    )
    .unwrap()
}

/// The pure model of the shape with `U` listed in the given order.
fn model(s: &Shape, order: &[usize]) -> PureSullivan {
    let v = gens("v", &s.v);
    let sv = v.suspension().unwrap();
    let mut coeffs = s.coeffs.iter().cycle();
    let images: Vec<GradedElement> = s
        .u
        .iter()
        .map(|d| {
            let mut x = GradedElement::zero(&sv);
            for m in basis_of_degree(&sv, d + 1) {
                x.add_term(m, int(*coeffs.next().unwrap()));
            }
            x
        })
        .collect();
    let u_degrees: Vec<u32> = order.iter().map(|i| s.u[*i]).collect();
    let names: Vec<(String, u32)> = order.iter().map(|i| (format!("u{i}"), s.u[*i])).collect();
    let u = GeneratorSet::new(names, vec![]).unwrap();
    assert_eq!(u.len(), u_degrees.len());
    PureSullivan::new(&u, &v, order.iter().map(|i| images[*i].clone()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_squares_to_zero(s in shape()) {
        let order: Vec<usize> = (0..s.u.len()).collect();
        let c = model(&s, &order).complex(8).unwrap();
        prop_assert!(c.d_squared_vanishes());
    }

    #[test]
    fn cohomology_ignores_order_of_u(s in shape(), seed in 0usize..6) {
        let mut order: Vec<usize> = (0..s.u.len()).collect();
        order.rotate_left(seed % s.u.len());
        if seed % 2 == 1 {
            order.reverse();
        }
        let identity: Vec<usize> = (0..s.u.len()).collect();
        prop_assert_eq!(
            model(&s, &identity).cohomology_dims(8).unwrap(),
            model(&s, &order).cohomology_dims(8).unwrap()
        );
    }

    #[test]
    fn euler_characteristic_matches_complex(s in shape()) {
        let order: Vec<usize> = (0..s.u.len()).collect();
        let m = model(&s, &order);
        let c = m.complex(6).unwrap();
        let h = c.cohomology().dims;
        // Truncating at degree 6 leaves the rank of the last differential over.
        let chains: i64 = (0..=6).map(|n| if n % 2 == 0 { c.dim(n) as i64 } else { -(c.dim(n) as i64) }).sum();
        let coh: i64 = h.iter().enumerate().map(|(n, d)| if n % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
        let top_boundary = c.differential(6).rank() as i64;
        prop_assert_eq!(chains, coh + top_boundary);
    }
}

#[test]
fn desk_instances_satisfy_the_coordinate_change_identities() {
    for inst in desk_instances(100, 6).unwrap() {
        let (m, cap) = (&inst.model, inst.cap);
        assert!(m.differentials_square_to_zero(cap), "seed {}", inst.seed);
        assert!(m.homotopy_identity(cap), "seed {}", inst.seed);
        assert!(m.phi_intertwines(cap), "seed {}", inst.seed);
        assert!(m.m_phi_is_pi(cap), "seed {}", inst.seed);
        assert!(m.m_is_quasi_isomorphism(cap).unwrap(), "seed {}", inst.seed);
    }
}
