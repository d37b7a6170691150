use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::linalg::{int, Scalar};

fn gens(odd: &[(&str, u32)], even: &[(&str, u32)]) -> Arc<GeneratorSet> {
    GeneratorSet::new(
        odd.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
        even.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
    )
    .unwrap()
}

fn g(a: &Arc<GeneratorSet>, i: usize) -> GradedElement {
    GradedElement::generator(a, i)
}

#[test]
fn koszul_signs() {
    let a = gens(&[("x", 3), ("y", 5)], &[("p", 4), ("q", 6)]);
    let x = g(&a, 0);
    let y = g(&a, 1);
    assert!(x.mul(&x).is_zero());
    assert_eq!(x.mul(&y), y.mul(&x).scaled(&int(-1)));
    let p = g(&a, 2);
    let q = g(&a, 3);
    assert_eq!(p.mul(&q), q.mul(&p));
    assert_eq!(x.mul(&p), p.mul(&x));
}

#[test]
fn multiply_rejects_foreign_ambient() {
    let a = gens(&[("x", 1)], &[]);
    let b = gens(&[("z", 1)], &[]);
    assert!(g(&a, 0).multiply(&g(&b, 0)).is_err());
}

#[test]
fn interior_derivation_examples() {
    let a = gens(&[("x", 1), ("y", 1)], &[]);
    let ix = Derivation::interior(&a, &[Scalar::one(), Scalar::zero()]).unwrap();
    let xy = g(&a, 0).mul(&g(&a, 1));
    assert_eq!(ix.apply(&xy), g(&a, 1));
    assert!(ix.apply(&g(&a, 1)).is_zero());
    assert!(ix.apply(&g(&a, 0).mul(&g(&a, 0))).is_zero());
    // ι(y*)(x∧y) = -x
    let iy = Derivation::interior(&a, &[Scalar::zero(), Scalar::one()]).unwrap();
    assert_eq!(iy.apply(&xy), g(&a, 0).scaled(&int(-1)));
}

#[test]
fn polynomial_derivation_examples() {
    let a = gens(&[], &[("sP", 4), ("sQ", 6)]);
    let d = Derivation::polynomial(&a, &[Scalar::one(), Scalar::zero()]).unwrap();
    assert_eq!(d.apply(&g(&a, 0).pow(2)), g(&a, 0).scaled(&int(2)));
    assert!(d.apply(&g(&a, 1)).is_zero());
}

#[test]
fn euler_identity_in_degree_three() {
    // Σ_j μ(y_j) ∂(y_j*) multiplies a polynomial of word length p by p.
    let a = gens(&[], &[("a", 2), ("b", 2), ("c", 4)]);
    let n = a.len();
    let mut x = GradedElement::zero(&a);
    for m in basis_of_degree(&a, 6) {
        x.add_term(m, int(3));
    }
    x = x.filter(|m| m.even_length() == 3);
    assert!(!x.is_zero());
    let mut total = GradedElement::zero(&a);
    for j in 0..n {
        let mut alpha = vec![Scalar::zero(); n];
        alpha[j] = Scalar::one();
        let d = Derivation::polynomial(&a, &alpha).unwrap();
        total.add_scaled(&Scalar::one(), &g(&a, j).mul(&d.apply(&x)));
    }
    assert_eq!(total, x.scaled(&int(3)));
}

#[test]
fn truncate_examples() {
    let a = gens(&[("x", 3)], &[("sP", 4)]);
    let one_plus_x = GradedElement::one(&a).plus(&g(&a, 0));
    assert_eq!(one_plus_x.truncate(0), GradedElement::one(&a));
    assert_eq!(one_plus_x.truncate(10), one_plus_x);
    let p = g(&a, 1);
    assert_eq!(p.plus(&p.pow(2)).truncate(4), p);
}

#[test]
fn basis_examples() {
    let a = gens(&[("x", 1), ("y", 1), ("z", 1)], &[]);
    assert_eq!(basis_of_degree(&a, 2).len(), 3);
    let b = gens(&[], &[("sP", 4)]);
    let m = basis_of_degree(&b, 8);
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].even[0], 2);
    let c = gens(&[("x", 3)], &[("sP", 4)]);
    let m = basis_of_degree(&c, 7);
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].render(&c), "x⊗sP");
}

#[test]
fn exterior_dimensions_are_binomial() {
    for n in 0..8usize {
        let names: Vec<(String, u32)> = (0..n).map(|i| (format!("x{i}"), 1)).collect();
        let a = GeneratorSet::new(names, vec![]).unwrap();
        let mut binom = 1usize;
        for p in 0..=n {
            assert_eq!(basis_of_degree(&a, p as u32).len(), binom);
            binom = binom * (n - p) / (p + 1);
        }
    }
}

/// Coefficients of `Π_odd (1 + t^d) Π_even 1/(1 - t^d)` up to `cap`.
fn hilbert_series(a: &GeneratorSet, cap: usize) -> Vec<usize> {
    let mut series = vec![0usize; cap + 1];
    series[0] = 1;
    for gen in a.generators() {
        let d = gen.degree as usize;
        match gen.parity {
            Parity::Odd => {
                for n in (d..=cap).rev() {
                    series[n] += series[n - d];
                }
            }
            Parity::Even => {
                for n in d..=cap {
                    series[n] += series[n - d];
                }
            }
        }
    }
    series
}

#[test]
fn basis_counts_match_generating_function() {
    let a = gens(
        &[("u", 3), ("v", 3), ("w", 5), ("z", 1)],
        &[("p", 2), ("q", 4), ("r", 4)],
    );
    let series = hilbert_series(&a, 16);
    for n in 0..=16u32 {
        let basis = basis_of_degree(&a, n);
        assert_eq!(basis.len(), series[n as usize], "degree {n}");
        let mut dedup = basis.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), basis.len());
        assert!(basis.iter().all(|m| m.degree(&a) == n));
    }
}

#[test]
fn degree_basis_round_trip() {
    let a = gens(&[("x", 1), ("y", 3)], &[("p", 2)]);
    let basis = DegreeBasis::new(&a, 4);
    let mut x = GradedElement::zero(&a);
    for (i, m) in basis.monomials().iter().enumerate() {
        x.add_term(m.clone(), int(i as i64 + 1));
    }
    let v = basis.coords(&x).unwrap();
    assert_eq!(basis.element(&a, &v), x);
    assert!(basis.coords(&g(&a, 0)).is_err());
}

#[test]
fn algebra_map_is_multiplicative() {
    let src = gens(&[("x", 1), ("y", 1)], &[("p", 2)]);
    let dst = gens(&[("a", 1), ("b", 1), ("c", 1)], &[]);
    let ab = g(&dst, 0).mul(&g(&dst, 1));
    let images = vec![
        g(&dst, 0).plus(&g(&dst, 2)),
        g(&dst, 1).scaled(&int(2)),
        ab.plus(&g(&dst, 1).mul(&g(&dst, 2))),
    ];
    let f = AlgebraMap::new(&src, &dst, images);
    let x = g(&src, 0);
    let y = g(&src, 1);
    assert_eq!(f.apply(&x.mul(&y)), f.apply(&x).mul(&f.apply(&y)));
    let p = g(&src, 2);
    assert_eq!(f.apply(&x.mul(&p)), f.apply(&x).mul(&f.apply(&p)));
}

fn arb_element(a: Arc<GeneratorSet>, degree: u32) -> impl Strategy<Value = GradedElement> {
    let basis = basis_of_degree(&a, degree);
    let n = basis.len();
    proptest::collection::vec(-3i64..=3, n).prop_map(move |cs| {
        GradedElement::from_terms(
            &a,
            basis.iter().cloned().zip(cs.into_iter().map(int)),
        )
    })
}

fn test_ambient() -> Arc<GeneratorSet> {
    gens(&[("x", 1), ("y", 1), ("z", 3), ("w", 3)], &[("p", 2), ("q", 4)])
}

fn arb_pair(max: u32) -> impl Strategy<Value = (u32, GradedElement, u32, GradedElement)> {
    (0..max, 0..max).prop_flat_map(|(da, db)| {
        let a = test_ambient();
        (
            Just(da),
            arb_element(a.clone(), da),
            Just(db),
            arb_element(a, db),
        )
    })
}

fn sample_derivation(a: &Arc<GeneratorSet>, which: usize) -> Derivation {
    let z = || GradedElement::zero(a);
    match which {
        0 => Derivation::interior(a, &[int(1), int(-2), int(0), int(0)]).unwrap(),
        1 => Derivation::interior(a, &[int(0), int(0), int(3), int(1)]).unwrap(),
        2 => Derivation::polynomial(a, &[int(1), int(0)]).unwrap(),
        3 => Derivation::polynomial(a, &[int(0), int(5)]).unwrap(),
        4 => Derivation::new(
            a,
            1,
            vec![
                g(a, 4),
                z(),
                g(a, 5),
                z(),
                g(a, 0).mul(&g(a, 1)).mul(&g(a, 0).plus(&g(a, 1))),
                z(),
            ],
        ),
        _ => Derivation::new(
            a,
            2,
            vec![
                g(a, 2),
                z(),
                z(),
                z(),
                g(a, 4).mul(&g(a, 4)),
                g(a, 0).mul(&g(a, 1)).mul(&g(a, 4).pow(2)),
            ],
        ),
    }
}

proptest! {
    #[test]
    fn graded_commutativity((da, x, db, y) in arb_pair(6)) {
        let sign = if da % 2 == 1 && db % 2 == 1 { int(-1) } else { int(1) };
        prop_assert_eq!(x.mul(&y), y.mul(&x).scaled(&sign));
    }

    #[test]
    fn derivation_rule((da, x, _db, y) in arb_pair(5), which in 0usize..6) {
        let a = test_ambient();
        let d = sample_derivation(&a, which);
        let x = x.rebase(&a);
        let y = y.rebase(&a);
        let sign = if d.is_odd() && da % 2 == 1 { int(-1) } else { int(1) };
        let lhs = d.apply(&x.mul(&y));
        let mut rhs = d.apply(&x).mul(&y);
        rhs.add_scaled(&sign, &x.mul(&d.apply(&y)));
        prop_assert_eq!(lhs, rhs);
    }
}
