mod common;

use common::*;
use proptest::prelude::*;
use unilines_core::lines::{
    canonical_pair, tuple_type, unoriented_tuple_type, LineTupleType, OrientedLine,
};
use unilines_core::{Matrix, Vector};

fn ty(lines: &[OrientedLine]) -> Option<LineTupleType> {
    tuple_type(&lines.iter().collect::<Vec<_>>()).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn representative_invariance(
        lines in prop::collection::vec(line(4), 3),
        i in 0usize..3,
        alpha in scalar(),
        beta in positive_scalar(),
    ) {
        if let Some(t) = ty(&lines) {
            let mut moved = lines.clone();
            let l = &lines[i];
            moved[i] = OrientedLine::new(&l.a + &l.v.scale(&alpha), l.v.scale(&beta)).unwrap();
            prop_assert_eq!(ty(&moved), Some(t));
        }
    }

    #[test]
    fn translation_invariance(lines in prop::collection::vec(line(4), 3), w in vector(4)) {
        if let Some(t) = ty(&lines) {
            let moved: Vec<OrientedLine> = lines
                .iter()
                .map(|l| OrientedLine::new(&l.a + &w, l.v.clone()).unwrap())
                .collect();
            prop_assert_eq!(ty(&moved), Some(t));
        }
    }

    #[test]
    fn linear_equivariance(lines in prop::collection::vec(line(3), 2), rows in square(3)) {
        let m = Matrix::from_rows(rows).unwrap();
        let det = m.det().unwrap();
        prop_assume!(!det.is_zero());
        if let Some(t) = ty(&lines) {
            let mapped: Vec<OrientedLine> = lines
                .iter()
                .map(|l| OrientedLine::new(apply(&m, &l.a), apply(&m, &l.v)).unwrap())
                .collect();
            let expected = if det.is_positive() { t } else { t.reversed() };
            prop_assert_eq!(ty(&mapped), Some(expected));
        }
    }

    #[test]
    fn global_flip(d in 3usize..=5, seed in prop::collection::vec(line(5), 4)) {
        let lines: Vec<OrientedLine> = seed
            .iter()
            .take(d - 1)
            .map(|l| {
                let a = Vector::new(l.a.coords()[..d].to_vec());
                let v = Vector::new(l.v.coords()[..d].to_vec());
                OrientedLine::new(a, v)
            })
            .filter_map(Result::ok)
            .collect();
        prop_assume!(lines.len() == d - 1);
        if let Some(t) = ty(&lines) {
            let flipped: Vec<OrientedLine> = lines.iter().map(OrientedLine::flipped).collect();
            let expected = if d % 2 == 1 { t } else { t.reversed() };
            prop_assert_eq!(ty(&flipped), Some(expected));
        }
    }

    #[test]
    fn unoriented_profile_ignores_orientation(lines in prop::collection::vec(line(3), 3), mask in 0u8..8) {
        let refs: Vec<&OrientedLine> = lines.iter().collect();
        if let Ok(p) = unoriented_tuple_type(&refs) {
            let flipped: Vec<OrientedLine> = lines
                .iter()
                .enumerate()
                .map(|(i, l)| if mask >> i & 1 == 1 { l.flipped() } else { l.clone() })
                .collect();
            let again = unoriented_tuple_type(&flipped.iter().collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(&again, &p);
            // each entry is the canonical form of some oriented choice
            for (j, pair) in p.pairs.iter().enumerate() {
                let rest: Vec<OrientedLine> = lines.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, l)| l.clone()).collect();
                let t = ty(&rest).unwrap();
                prop_assert_eq!(pair, &canonical_pair(&t.sigma));
            }
        }
    }
}
