mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use unilines_core::exact::{affine_dependence, det_integer, top_pairing, wedge_to_vector, wedge_vectors};
use unilines_core::{ExactScalar, Matrix, Multivector, Vector};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn det_matches_laplace(n in 1usize..=5, seed in any::<u64>()) {
        let rows = sample_square(n, seed);
        let m = Matrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(m.det().unwrap(), laplace(&rows));
    }

    #[test]
    fn repeated_column_gives_zero(rows in square(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let mut rows = rows;
        for r in rows.iter_mut() {
            r[j] = r[i].clone();
        }
        prop_assert!(Matrix::from_rows(rows).unwrap().det().unwrap().is_zero());
    }

    #[test]
    fn swapping_columns_negates(rows in square(4), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let before = Matrix::from_rows(rows.clone()).unwrap().det().unwrap();
        let mut rows = rows;
        for r in rows.iter_mut() {
            r.swap(i, j);
        }
        prop_assert_eq!(Matrix::from_rows(rows).unwrap().det().unwrap(), -before);
    }

    #[test]
    fn integer_det_agrees(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 4)) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let exact = Matrix::from_ints(&refs).unwrap().det().unwrap();
        prop_assert_eq!(ExactScalar::from(det_integer(big)), exact);
    }

    #[test]
    fn wedge_to_vector_is_the_cofactor_vector(vs in prop::collection::vec(vector(4), 3), x in vector(4)) {
        let refs: Vec<&Vector> = vs.iter().collect();
        let u = wedge_to_vector(&refs).unwrap();
        for v in &vs {
            prop_assert!(u.dot(v).unwrap().is_zero());
        }
        let mut cols = vec![&x];
        cols.extend(refs.iter().copied());
        prop_assert_eq!(u.dot(&x).unwrap(), det_of_columns(&cols));
        let mv = wedge_vectors(4, &refs).unwrap();
        prop_assert_eq!(top_pairing(&x, &mv).unwrap(), det_of_columns(&cols));
    }

    #[test]
    fn graded_anticommutation(p in 1usize..=3, q in 1usize..=3, seed in any::<u64>()) {
        let d = 6;
        let vs: Vec<Vector> = sample_square(d, seed).into_iter().map(Vector::new).collect();
        let a_refs: Vec<&Vector> = vs[..p].iter().collect();
        let b_refs: Vec<&Vector> = vs[p..p + q].iter().collect();
        let a = wedge_vectors(d, &a_refs).unwrap();
        let b = wedge_vectors(d, &b_refs).unwrap();
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        if (p * q) % 2 == 0 {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, ba.neg());
        }
    }

    #[test]
    fn affine_dependence_is_exact(pts in prop::collection::vec(vector(3), 5)) {
        if let Ok(lambda) = affine_dependence(&pts) {
            let total: ExactScalar = lambda.iter().sum();
            prop_assert!(total.is_zero());
            let mut combo = Vector::zeros(3);
            for (l, p) in lambda.iter().zip(&pts) {
                combo = &combo + &p.scale(l);
            }
            prop_assert!(combo.is_zero());
            prop_assert_eq!(&lambda[0], &ExactScalar::one());
        }
    }
}

fn sample_square(n: usize, seed: u64) -> Vec<Vec<ExactScalar>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..n).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=6))).collect())
        .collect()
}

#[test]
fn blade_sign_convention() {
    let e1 = Multivector::from_vector(&Vector::basis(3, 1)).unwrap();
    let e2 = Multivector::from_vector(&Vector::basis(3, 2)).unwrap();
    let e12 = e1.wedge(&e2).unwrap();
    assert_eq!(e12.coeff(&[1, 2]), ExactScalar::one());
    assert_eq!(e2.wedge(&e1).unwrap().coeff(&[1, 2]), -ExactScalar::one());
}
