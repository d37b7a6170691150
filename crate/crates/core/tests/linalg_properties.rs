use lieform_core::linalg::{eigenspace_split, int, quotient_and_section, rank_of_dense, Matrix, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        prop_assert_eq!(m.rank(), m.rank_bareiss());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_is_exact(m in matrix(5), x in proptest::collection::vec(-4i64..=4, 5)) {
        let x: Vec<Scalar> = x.into_iter().take(m.cols()).map(int).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn quotient_section_splits(vs in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 0..4)) {
        let sub: Vec<Vec<Scalar>> = vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect();
        let (proj, lift) = quotient_and_section(4, &sub);
        prop_assert_eq!(proj.rows(), 4 - rank_of_dense(&sub));
        prop_assert!((&proj * &lift).is_identity());
        for v in &sub {
            prop_assert!(proj.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn eigenspaces_reconstruct(perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(), signs in proptest::collection::vec(prop::bool::ANY, 4)) {
        // A signed permutation matrix squaring to one: pair up swapped slots.
        let mut m = Matrix::zeros(4, 4);
        let mut done = [false; 4];
        for i in 0..4 {
            if done[i] {
                continue;
            }
            let j = perm[i];
            if done[j] || j == i {
                m.set(i, i, int(if signs[i] { 1 } else { -1 }));
                done[i] = true;
            } else {
                m.set(i, j, int(1));
                m.set(j, i, int(1));
                done[i] = true;
                done[j] = true;
            }
        }
        let (plus, minus) = eigenspace_split(&m).unwrap();
        prop_assert_eq!(plus.len() + minus.len(), 4);
        let mut all = plus.clone();
        all.extend(minus.iter().cloned());
        prop_assert_eq!(rank_of_dense(&all), 4);
        for v in &plus {
            prop_assert_eq!(&m.mul_vec(v), v);
        }
        for v in &minus {
            let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
            prop_assert_eq!(m.mul_vec(v), neg);
        }
    }
}

#[test]
fn non_involution_is_rejected() {
    let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert!(eigenspace_split(&m).is_err());
}
