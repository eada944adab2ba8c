mod common;

use common::*;
use proptest::prelude::*;
use unilines_core::explore::{census, find_homogeneous, trial_lines, CensusParams, ObjectClass};
use unilines_core::io::to_canonical_json;
use unilines_core::lines::{sequence_type, OrientedLine};

fn params(d: usize, count: usize, n: usize, trials: u64, seed: u64) -> CensusParams {
    CensusParams {
        class: ObjectClass::OrientedLines,
        d,
        k: 1,
        count,
        n,
        trials,
        seed,
        bound: 10,
        jobs: 1,
    }
}

#[test]
fn reported_subsequences_are_homogeneous() {
    for (d, count, n) in [(3, 8, 4), (4, 7, 4)] {
        let p = params(d, count, n, 20, 3);
        let c = census(&p).unwrap();
        let mut found = 0;
        for t in 0..p.trials {
            let ls = trial_lines(&p, t).unwrap();
            if let Some(idx) = find_homogeneous(&ls, n).unwrap() {
                assert!(idx.windows(2).all(|w| w[0] < w[1]));
                let sub: Vec<OrientedLine> = idx.iter().map(|&i| ls[i - 1].clone()).collect();
                assert!(sequence_type(&sub).unwrap().is_some(), "trial {t} indices {idx:?}");
                found += 1;
            }
        }
        assert_eq!(found, c.histogram.values().sum::<u64>());
    }
}

#[test]
fn d5_census_flags_only_watch_list_types() {
    let p = params(5, 7, 4, 10, 1);
    let c = census(&p).unwrap();
    for hit in &c.watch_hits {
        assert!(c.histogram.contains_key(&hit.ty));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn census_is_reproducible(seed in any::<u64>(), jobs in 1usize..4) {
        let p = params(3, 6, 3, 10, seed);
        let a = to_canonical_json(&census(&p).unwrap()).unwrap();
        let b = to_canonical_json(&census(&CensusParams { jobs, ..p }).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn search_finds_any_homogeneous_run(lines in prop::collection::vec(line(3), 5)) {
        // the search is exhaustive, so it agrees with brute force over subsets
        if let Ok(found) = find_homogeneous(&lines, 3) {
            let brute = (0..5usize).flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| [a, b, c])))
                .find(|t| {
                    let sub: Vec<OrientedLine> = t.iter().map(|&i| lines[i].clone()).collect();
                    matches!(sequence_type(&sub), Ok(Some(_)))
                })
                .map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>());
            prop_assert_eq!(found, brute);
        }
    }
}
