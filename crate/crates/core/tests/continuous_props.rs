mod common;

use common::*;
use proptest::prelude::*;
use unilines_core::continuous::{
    det_a, elem_symmetric, family_line, family_lines, family_type_check, secondary_vandermonde, vandermonde,
    FamilySpec, Polynomial,
};
use unilines_core::lines::LineTupleType;
use unilines_core::ExactScalar;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn secondary_is_symmetric_times_principal(d in 2usize..=7, ts in increasing(6)) {
        let ts = &ts[..d - 1];
        let v0 = vandermonde(ts).unwrap();
        prop_assert!(v0.is_positive());
        for j in 0..d {
            prop_assert_eq!(secondary_vandermonde(ts, j).unwrap(), &elem_symmetric(ts, j) * &v0);
        }
    }

    #[test]
    fn det_a_expands(d in 2usize..=6, ts in increasing(5), a in prop::collection::vec(positive_scalar(), 6)) {
        let ts = &ts[..d - 1];
        let a = &a[..d];
        let expected: ExactScalar = (1..=d)
            .map(|i| &a[i - 1] * &secondary_vandermonde(ts, d - i).unwrap())
            .sum();
        let got = det_a(a, ts).unwrap();
        prop_assert_eq!(&got, &expected);
        prop_assert!(got.is_positive());
    }

    #[test]
    fn generic_families_have_identity_type(
        d in 3usize..=5,
        coeffs in prop::collection::vec((1i64..=5, 1i64..=3), 5),
        ts in increasing(6),
    ) {
        // a_i(t) = c_i + i t, positive and increasing in i for t > 0 when c is sorted
        let mut cs: Vec<i64> = coeffs.iter().map(|&(c, _)| c).take(d).collect();
        cs.sort_unstable();
        let polys = (0..d).map(|i| Polynomial(vec![ExactScalar::from(cs[i]), ExactScalar::from(i as i64 + 1)])).collect();
        let spec = FamilySpec::generic(polys);
        let ts = &ts[..d + 1];
        prop_assert_eq!(family_type_check(&spec, ts).unwrap(), Some(LineTupleType::identity(d)));
    }

    #[test]
    fn hyperboloid_lines_lie_on_the_surface(s in -5i64..=5, tau in scalar()) {
        let t = q(s, 6);
        let l = family_line(&FamilySpec::hyperboloid(), &t).unwrap();
        let p: Vec<ExactScalar> = l.a.iter().zip(l.v.iter()).map(|(a, v)| a + &(&tau * v)).collect();
        let lhs = &(&p[0] * &p[0]) + &(&p[1] * &p[1]);
        let rhs = &(&p[2] * &p[2]) + &ExactScalar::one();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn family_lines_are_in_parameter_order() {
    let spec = FamilySpec::moment_direction(3);
    let ts: Vec<ExactScalar> = (1..=4).map(|k| q(k, 5)).collect();
    let ls = family_lines(&spec, &ts).unwrap();
    assert_eq!(ls.len(), 4);
    assert_eq!(ls[1].a[0], q(2, 5));
}
