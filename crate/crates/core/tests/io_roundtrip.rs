mod common;

use common::*;
use proptest::prelude::*;
use unilines_core::continuous::FamilySpec;
use unilines_core::explore::{census, CensusParams, ObjectClass};
use unilines_core::flats::Flat;
use unilines_core::io::{from_json, to_canonical_json, FlatFile, LineFile, PointFile};
use unilines_core::rimatrix::{build_exact, build_stretched, RIMatrix};
use unilines_core::ExactScalar;

fn round_trip<T>(value: &T)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let text = to_canonical_json(value).unwrap();
    let back: T = from_json(&text).unwrap();
    assert_eq!(&back, value);
    assert_eq!(to_canonical_json(&back).unwrap(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn line_files(lines in prop::collection::vec(line(4), 0..5)) {
        round_trip(&LineFile::new(4, lines));
    }

    #[test]
    fn point_files(points in prop::collection::vec(vector(3), 0..6)) {
        round_trip(&PointFile { d: 3, points });
    }

    #[test]
    fn flat_files(a in vector(5), b in prop::collection::vec(vector(5), 2)) {
        if let Ok(f) = Flat::new(a, b) {
            round_trip(&FlatFile { d: 5, k: 2, flats: vec![f] });
        }
    }

    #[test]
    fn scalars(x in scalar()) {
        round_trip(&x);
    }
}

#[test]
fn matrix_files_including_compact_entries() {
    round_trip(&build_exact(3, 5, &ExactScalar::ratio(1, 512)).unwrap());
    let big = build_stretched(3, 40, 400).unwrap();
    assert!(big.max_bits() > 10_000);
    let text = to_canonical_json(&big).unwrap();
    assert!(text.contains("pow2"));
    let back: RIMatrix = from_json(&text).unwrap();
    assert_eq!(back, big);
}

#[test]
fn family_and_census_files() {
    round_trip(&FamilySpec::hyperboloid());
    round_trip(&FamilySpec::moment_direction(5));
    let c = census(&CensusParams {
        class: ObjectClass::Points,
        d: 2,
        k: 1,
        count: 7,
        n: 4,
        trials: 5,
        seed: 9,
        bound: 5,
        jobs: 1,
    })
    .unwrap();
    round_trip(&c);
}
