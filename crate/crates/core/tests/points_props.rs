mod common;

use common::*;
use proptest::prelude::*;
use unilines_core::points::{moment, moment_star, orientation_sign, radon_partition, Sign};
use unilines_core::{Matrix, Vector};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_curves_have_opposite_signs(d in 1usize..=5, seed in increasing(6)) {
        let ts = &seed[..d + 1];
        let g: Vec<Vector> = ts.iter().map(|t| moment(t, d)).collect();
        let gs: Vec<Vector> = ts.iter().map(|t| moment_star(t, d)).collect();
        prop_assert_eq!(orientation_sign(&g.iter().collect::<Vec<_>>()).unwrap(), Sign::Positive);
        if d >= 2 {
            prop_assert_eq!(orientation_sign(&gs.iter().collect::<Vec<_>>()).unwrap(), Sign::Negative);
        }
    }

    #[test]
    fn radon_on_moment_curve_interlaces(d in 1usize..=5, ts in increasing(7)) {
        let pts: Vec<Vector> = ts[..d + 2].iter().map(|t| moment(t, d)).collect();
        let part = radon_partition(&pts).unwrap();
        prop_assert!(part.x.contains(&1));
        prop_assert!(part.is_interlacing());
    }

    #[test]
    fn translation_keeps_sign(pts in prop::collection::vec(vector(3), 4), w in vector(3)) {
        let refs: Vec<&Vector> = pts.iter().collect();
        if let Ok(s) = orientation_sign(&refs) {
            let moved: Vec<Vector> = pts.iter().map(|p| p + &w).collect();
            prop_assert_eq!(orientation_sign(&moved.iter().collect::<Vec<_>>()).unwrap(), s);
        }
    }

    #[test]
    fn linear_maps_act_by_det_sign(pts in prop::collection::vec(vector(3), 4), rows in square(3)) {
        let t = Matrix::from_rows(rows).unwrap();
        let det = t.det().unwrap();
        prop_assume!(!det.is_zero());
        let refs: Vec<&Vector> = pts.iter().collect();
        if let Ok(s) = orientation_sign(&refs) {
            let mapped: Vec<Vector> = pts.iter().map(|p| apply(&t, p)).collect();
            let after = orientation_sign(&mapped.iter().collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(after == s, det.is_positive());
        }
    }
}
