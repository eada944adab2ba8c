mod common;

use std::collections::BTreeSet;

use common::*;
use itertools::Itertools;
use unilines_core::construct::{
    all_specs, build_universal_lines, enumerate_stacked, BuildMode, ConstructOptions, UniversalLineSequence,
};
use unilines_core::lines::{reduce_profile, tuple_type, unoriented_tuple_type, OrientedLine};
use unilines_core::Vector;

fn build_all(d: usize, n: usize) -> Vec<UniversalLineSequence> {
    all_specs(d)
        .iter()
        .map(|s| build_universal_lines(d, n, s, BuildMode::Tuned, &ConstructOptions::default()).unwrap())
        .collect()
}

fn assert_every_tuple(seq: &UniversalLineSequence) {
    let target = seq.target();
    for t in (0..seq.n).combinations(seq.d - 1) {
        let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &seq.lines[i]).collect();
        assert_eq!(tuple_type(&tuple).unwrap().sigma, target, "{} tuple {t:?}", seq.spec);
    }
}

#[test]
fn coverage_in_low_dimensions() {
    for (d, n) in [(3, 5), (4, 5)] {
        let seqs = build_all(d, n);
        let mut types = BTreeSet::new();
        for seq in &seqs {
            assert!(seq.verified);
            assert_every_tuple(seq);
            types.insert(seq.target());
        }
        assert_eq!(types.len(), (1 << (d - 1)) - 2);
        assert_eq!(types, enumerate_stacked(d));
    }
}

#[test]
fn earlier_base_points_do_not_change_signs() {
    for seq in build_all(4, 4) {
        for t in (0..seq.n).combinations(seq.d - 1) {
            let vs: Vec<&Vector> = t.iter().map(|&i| &seq.lines[i].v).collect();
            for (pos, &i) in t.iter().enumerate() {
                let mut cols = vec![&seq.lines[i].a];
                cols.extend(vs.iter().copied());
                let base = det_of_columns(&cols).signum();
                // earlier in construction order, which runs backwards for descending specs
                let earlier = if seq.parameters.reversed { &t[pos + 1..] } else { &t[..pos] };
                for &h in earlier {
                    let diff = &seq.lines[i].a - &seq.lines[h].a;
                    let mut cols = vec![&diff];
                    cols.extend(vs.iter().copied());
                    assert_eq!(det_of_columns(&cols).signum(), base, "{} tuple {t:?}", seq.spec);
                }
            }
        }
    }
}

#[test]
fn unoriented_profile_is_constant() {
    for seq in build_all(4, 5) {
        let profiles: BTreeSet<_> = (0..seq.n)
            .combinations(seq.d)
            .map(|t| {
                let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &seq.lines[i]).collect();
                unoriented_tuple_type(&tuple).unwrap()
            })
            .collect();
        assert_eq!(profiles.len(), 1, "{}", seq.spec);
        let p = profiles.into_iter().next().unwrap();
        assert!(reduce_profile(&p).is_some(), "{}", seq.spec);
    }
}
