//! Random configurations, exhaustive search for homogeneous subsequences,
//! and seeded type censuses.
//!
//! Trial `i` of a census draws from the ChaCha8 stream `i` of the seed, so
//! results do not depend on how trials are scheduled.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::is_two_sided_stacked;
use crate::error::{Error, Result};
use crate::exact::{ExactScalar, Vector};
use crate::flats::{flats_tuple_type, Flat};
use crate::lines::{self, format_perm, unoriented_tuple_type, OrientedLine};
use crate::par;
use crate::points::orientation_sign;

/// Resampling attempts per trial before it is given up.
const MAX_RESAMPLES: u32 = 1_000;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_coords<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vector {
    Vector::new((0..d).map(|_| ExactScalar::from(rng.gen_range(-bound..=bound))).collect())
}

fn random_nonzero<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vector {
    loop {
        let v = random_coords(rng, d, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vector {
    random_coords(rng, d, bound.max(1))
}

/// Integer base point and direction with coordinates in `[-bound, bound]`;
/// a zero direction is redrawn.
pub fn random_line<R: Rng>(rng: &mut R, d: usize, bound: i64) -> OrientedLine {
    let bound = bound.max(1);
    let a = random_coords(rng, d, bound);
    let v = random_nonzero(rng, d, bound);
    OrientedLine::new(a, v).expect("nonzero direction")
}

/// Random flat with an independent basis, redrawn until independent.
pub fn random_flat<R: Rng>(rng: &mut R, d: usize, k: usize, bound: i64) -> Flat {
    let bound = bound.max(1);
    let a = random_coords(rng, d, bound);
    loop {
        let basis = (0..k).map(|_| random_nonzero(rng, d, bound)).collect();
        if let Ok(f) = Flat::new(a.clone(), basis) {
            return f;
        }
    }
}

/// Exhaustive depth-first search for `n` increasing indices of `0..count`
/// all of whose `r`-subsets have the same entry in `types`.
///
/// `types` is keyed by the increasing `r`-subset; the first witness in
/// lexicographic order is returned, with its common type.
pub fn find_homogeneous_in<K: Clone + PartialEq>(
    count: usize,
    r: usize,
    n: usize,
    types: &HashMap<Vec<usize>, K>,
) -> Option<(Vec<usize>, K)> {
    if r == 0 || n < r || n > count {
        return None;
    }
    fn extend<K: Clone + PartialEq>(
        count: usize,
        r: usize,
        n: usize,
        types: &HashMap<Vec<usize>, K>,
        prefix: &mut Vec<usize>,
        ty: Option<K>,
    ) -> Option<(Vec<usize>, K)> {
        if prefix.len() == n {
            return ty.map(|t| (prefix.clone(), t));
        }
        let start = prefix.last().map_or(0, |&l| l + 1);
        let needed = n - prefix.len();
        for j in start..=count - needed {
            let mut next_ty = ty.clone();
            let mut ok = true;
            if prefix.len() + 1 >= r {
                for sub in prefix.iter().copied().combinations(r - 1) {
                    let mut key = sub;
                    key.push(j);
                    let t = &types[&key];
                    match &next_ty {
                        None => next_ty = Some(t.clone()),
                        Some(cur) if cur == t => {}
                        Some(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok {
                prefix.push(j);
                let found = extend(count, r, n, types, prefix, next_ty);
                prefix.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
    extend(count, r, n, types, &mut Vec::with_capacity(n), None)
}

/// Types of every `r`-subset of `0..count`, or the first error.
fn type_table<K, F>(count: usize, r: usize, jobs: usize, f: F) -> Result<HashMap<Vec<usize>, K>>
where
    K: Send,
    F: Fn(&[usize]) -> Result<K> + Sync + Send,
{
    let tuples: Vec<Vec<usize>> = (0..count).combinations(r).collect();
    let results = par::map_items(&tuples, jobs, |t| f(t));
    tuples
        .into_iter()
        .zip(results)
        .map(|(t, res)| res.map(|k| (t, k)))
        .collect()
}

/// 1-based indices of a homogeneous subsequence of length `n`, if any.
pub fn find_homogeneous(lines_: &[OrientedLine], n: usize) -> Result<Option<Vec<usize>>> {
    let d = lines_.first().map_or(0, |l| l.dim());
    if d < 3 {
        return Err(Error::InvalidParameter("line types need d >= 3".into()));
    }
    let table = type_table(lines_.len(), d - 1, 1, |t| {
        let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &lines_[i]).collect();
        lines::tuple_type(&tuple).map(|ty| ty.sigma)
    })
    .map_err(|e| match e {
        Error::GeneralPosition { reason, .. } => Error::GeneralPosition {
            indices: Vec::new(),
            reason,
        },
        other => other,
    })?;
    Ok(find_homogeneous_in(lines_.len(), d - 1, n, &table)
        .map(|(idx, _)| idx.into_iter().map(|i| i + 1).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectClass {
    Points,
    OrientedLines,
    UnorientedLines,
    Flats,
}

impl FromStr for ObjectClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "points" => Ok(ObjectClass::Points),
            "oriented-lines" | "lines" => Ok(ObjectClass::OrientedLines),
            "unoriented-lines" => Ok(ObjectClass::UnorientedLines),
            "flats" => Ok(ObjectClass::Flats),
            _ => Err(Error::Parse(format!(
                "unknown class {s:?}, expected points, oriented-lines, unoriented-lines or flats"
            ))),
        }
    }
}

impl fmt::Display for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectClass::Points => "points",
            ObjectClass::OrientedLines => "oriented-lines",
            ObjectClass::UnorientedLines => "unoriented-lines",
            ObjectClass::Flats => "flats",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusParams {
    pub class: ObjectClass,
    pub d: usize,
    /// Flat dimension; ignored for the other classes.
    pub k: usize,
    pub count: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub bound: i64,
    pub jobs: usize,
}

/// A homogeneous subsequence whose type is on the watch-list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatchHit {
    pub trial: u64,
    pub indices: Vec<usize>,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub class: ObjectClass,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub count: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub bound: i64,
    /// Type of the first homogeneous subsequence of each trial.
    pub histogram: BTreeMap<String, u64>,
    /// Samples rejected for general position (each one redrawn).
    pub failures: u64,
    /// Trials without a homogeneous subsequence of length `n`.
    pub not_found: u64,
    /// Trials abandoned after repeated general-position failures.
    pub abandoned: u64,
    pub watch_hits: Vec<WatchHit>,
}

/// Permutations of `[d-1]` flagged in oriented-line censuses: for `d = 5`,
/// those that are not two-sided stacked.
pub fn watch_list(d: usize) -> Vec<Vec<usize>> {
    if d != 5 {
        return Vec::new();
    }
    (1..=4usize)
        .permutations(4)
        .filter(|p| !is_two_sided_stacked(p))
        .collect()
}

struct TrialOutcome {
    failures: u64,
    found: Option<(Vec<usize>, String)>,
    abandoned: bool,
}

/// Draws `count` objects and tabulates the types of their tuples.
fn draw_table(
    p: &CensusParams,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(usize, HashMap<Vec<usize>, String>), ()> {
    let (d, k, b) = (p.d, p.k, p.bound);
    match p.class {
        ObjectClass::Points => {
            let pts: Vec<Vector> = (0..p.count).map(|_| random_point(rng, d, b)).collect();
            let table = type_table(p.count, d + 1, 1, |t| {
                let tuple: Vec<&Vector> = t.iter().map(|&i| &pts[i]).collect();
                orientation_sign(&tuple).map(|s| s.to_string())
            })
            .map_err(drop)?;
            Ok((d + 1, table))
        }
        ObjectClass::OrientedLines => {
            let ls: Vec<OrientedLine> = (0..p.count).map(|_| random_line(rng, d, b)).collect();
            let table = type_table(p.count, d - 1, 1, |t| {
                let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &ls[i]).collect();
                lines::tuple_type(&tuple).map(|ty| ty.to_string())
            })
            .map_err(drop)?;
            Ok((d - 1, table))
        }
        ObjectClass::UnorientedLines => {
            let ls: Vec<OrientedLine> = (0..p.count).map(|_| random_line(rng, d, b)).collect();
            let table = type_table(p.count, d, 1, |t| {
                let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &ls[i]).collect();
                unoriented_tuple_type(&tuple).map(|pr| pr.to_string())
            })
            .map_err(drop)?;
            Ok((d, table))
        }
        ObjectClass::Flats => {
            let r = (d - 1) / k;
            let fs: Vec<Flat> = (0..p.count).map(|_| random_flat(rng, d, k, b)).collect();
            let table = type_table(p.count, r, 1, |t| {
                let tuple: Vec<&Flat> = t.iter().map(|&i| &fs[i]).collect();
                flats_tuple_type(&tuple).map(|ty| ty.to_string())
            })
            .map_err(drop)?;
            Ok((r, table))
        }
    }
}

fn run_trial(p: &CensusParams, trial: u64) -> TrialOutcome {
    let mut rng = trial_rng(p.seed, trial);
    let mut failures = 0;
    for _ in 0..MAX_RESAMPLES {
        match draw_table(p, &mut rng) {
            Err(()) => failures += 1,
            Ok((r, table)) => {
                let found = find_homogeneous_in(p.count, r, p.n, &table)
                    .map(|(idx, ty)| (idx.into_iter().map(|i| i + 1).collect(), ty));
                return TrialOutcome {
                    failures,
                    found,
                    abandoned: false,
                };
            }
        }
    }
    TrialOutcome {
        failures,
        found: None,
        abandoned: true,
    }
}

fn check_params(p: &CensusParams) -> Result<()> {
    let r = match p.class {
        ObjectClass::Points => {
            if p.d < 1 {
                return Err(Error::InvalidParameter("points need d >= 1".into()));
            }
            p.d + 1
        }
        ObjectClass::OrientedLines | ObjectClass::UnorientedLines => {
            if p.d < 3 {
                return Err(Error::InvalidParameter("line censuses need d >= 3".into()));
            }
            if p.class == ObjectClass::OrientedLines {
                p.d - 1
            } else {
                p.d
            }
        }
        ObjectClass::Flats => {
            if p.k < 1 || p.d < 2 || !(p.d - 1).is_multiple_of(p.k) {
                return Err(Error::InvalidParameter(format!(
                    "flats need d = rk + 1, got d = {}, k = {}",
                    p.d, p.k
                )));
            }
            (p.d - 1) / p.k
        }
    };
    if p.n < r || p.count < p.n {
        return Err(Error::InvalidParameter(format!(
            "need {r} <= n <= N, got n = {}, N = {}",
            p.n, p.count
        )));
    }
    Ok(())
}

pub fn census(p: &CensusParams) -> Result<Census> {
    check_params(p)?;
    let watch: Vec<String> = if p.class == ObjectClass::OrientedLines {
        watch_list(p.d).iter().map(|w| format_perm(w)).collect()
    } else {
        Vec::new()
    };
    let trials: Vec<u64> = (0..p.trials).collect();
    let outcomes = par::map_items(&trials, p.jobs, |&t| run_trial(p, t));
    let mut out = Census {
        class: p.class,
        d: p.d,
        k: (p.class == ObjectClass::Flats).then_some(p.k),
        count: p.count,
        n: p.n,
        trials: p.trials,
        seed: p.seed,
        bound: p.bound,
        histogram: BTreeMap::new(),
        failures: 0,
        not_found: 0,
        abandoned: 0,
        watch_hits: Vec::new(),
    };
    for (trial, o) in trials.iter().zip(outcomes) {
        out.failures += o.failures;
        if o.abandoned {
            out.abandoned += 1;
            continue;
        }
        match o.found {
            None => out.not_found += 1,
            Some((indices, ty)) => {
                if watch.contains(&ty) {
                    out.watch_hits.push(WatchHit {
                        trial: *trial,
                        indices,
                        ty: ty.clone(),
                    });
                }
                *out.histogram.entry(ty).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// The objects of one census trial, as drawn after any resampling.
pub fn trial_lines(p: &CensusParams, trial: u64) -> Option<Vec<OrientedLine>> {
    let mut rng = trial_rng(p.seed, trial);
    for _ in 0..MAX_RESAMPLES {
        let snapshot = rng.clone();
        if draw_table(p, &mut rng).is_ok() {
            let mut replay = snapshot;
            return Some((0..p.count).map(|_| random_line(&mut replay, p.d, p.bound)).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuous::{family_lines, FamilySpec};

    #[test]
    fn lines_are_reproducible() {
        let a = random_line(&mut trial_rng(5, 0), 3, 10);
        let b = random_line(&mut trial_rng(5, 0), 3, 10);
        assert_eq!(a, b);
        let c = random_line(&mut trial_rng(6, 0), 3, 10);
        assert_ne!(a, c);
    }

    #[test]
    fn draws_rarely_collide() {
        let lines_: Vec<OrientedLine> = (0..100).map(|s| random_line(&mut trial_rng(s, 0), 3, 10)).collect();
        let distinct = lines_.iter().map(|l| format!("{l:?}")).collect::<std::collections::BTreeSet<_>>();
        assert!(distinct.len() >= 99);
    }

    #[test]
    fn unit_bound() {
        let mut rng = trial_rng(1, 3);
        for _ in 0..50 {
            let l = random_line(&mut rng, 3, 1);
            assert!(l.a.iter().chain(l.v.iter()).all(|c| *c >= -1i64 && *c <= 1i64));
            assert!(!l.v.is_zero());
        }
    }

    #[test]
    fn homogeneous_input_is_returned_whole() {
        let spec = FamilySpec::moment_direction(4);
        let ts: Vec<ExactScalar> = (1..=6).map(|k| ExactScalar::ratio(k, 7)).collect();
        let ls = family_lines(&spec, &ts).unwrap();
        assert_eq!(find_homogeneous(&ls, 6).unwrap(), Some(vec![1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn shuffled_family_still_has_a_run() {
        let spec = FamilySpec::hyperboloid();
        let ts: Vec<ExactScalar> = (-3..=3).map(|k| ExactScalar::ratio(k, 4)).collect();
        let mut ls = family_lines(&spec, &ts).unwrap();
        let order = [3, 0, 5, 1, 6, 2, 4];
        ls = order.iter().map(|&i| ls[i].clone()).collect();
        let found = find_homogeneous(&ls, 4).unwrap().unwrap();
        let sub: Vec<OrientedLine> = found.iter().map(|&i| ls[i - 1].clone()).collect();
        assert!(lines::sequence_type(&sub).unwrap().is_some());
    }

    #[test]
    fn non_homogeneous_exact_length() {
        let spec = FamilySpec::moment_direction(3);
        let ts: Vec<ExactScalar> = (1..=3).map(|k| ExactScalar::ratio(k, 4)).collect();
        let mut ls = family_lines(&spec, &ts).unwrap();
        ls[0] = ls[0].flipped();
        assert_eq!(find_homogeneous(&ls, 2).unwrap(), Some(vec![1, 2]));
        assert_eq!(find_homogeneous(&ls, 3).unwrap(), None);
    }

    #[test]
    fn search_on_table() {
        // types on pairs of 0..4: only {0,2,3} is homogeneous with n = 3
        let mut t = HashMap::new();
        for p in (0..4).combinations(2) {
            let v = if p == vec![0, 1] || p == vec![1, 2] || p == vec![1, 3] { 1 } else { 0 };
            t.insert(p, v);
        }
        assert_eq!(find_homogeneous_in(4, 2, 3, &t), Some((vec![0, 2, 3], 0)));
        assert_eq!(find_homogeneous_in(4, 2, 4, &t), None);
    }

    fn params(class: ObjectClass, d: usize, count: usize, n: usize, trials: u64) -> CensusParams {
        CensusParams {
            class,
            d,
            k: 1,
            count,
            n,
            trials,
            seed: 42,
            bound: 10,
            jobs: 1,
        }
    }

    #[test]
    fn point_census_has_two_signs() {
        let c = census(&params(ObjectClass::Points, 2, 10, 4, 30)).unwrap();
        assert!(c.histogram.keys().all(|k| k == "+1" || k == "-1"));
        assert_eq!(c.histogram.len(), 2);
    }

    #[test]
    fn census_is_deterministic_across_jobs() {
        let p = params(ObjectClass::OrientedLines, 3, 8, 3, 40);
        let a = census(&p).unwrap();
        let b = census(&CensusParams { jobs: 3, ..p.clone() }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.histogram.keys().all(|k| k == "1 2" || k == "2 1"));
    }

    #[test]
    fn other_classes_run() {
        let u = census(&params(ObjectClass::UnorientedLines, 3, 6, 3, 5)).unwrap();
        assert_eq!(u.histogram.values().sum::<u64>() + u.not_found + u.abandoned, 5);
        let mut fp = params(ObjectClass::Flats, 5, 6, 3, 5);
        fp.k = 2;
        let f = census(&fp).unwrap();
        assert!(f.histogram.keys().all(|k| k == "1 2" || k == "2 1"));
        assert!(census(&CensusParams { k: 3, ..fp }).is_err());
    }

    #[test]
    fn watch_list_for_d5() {
        let w = watch_list(5);
        assert_eq!(w.len(), 10);
        for p in [[2, 1, 4, 3], [2, 4, 1, 3], [1, 3, 2, 4], [4, 1, 3, 2], [1, 4, 2, 3]] {
            assert!(w.contains(&p.to_vec()));
            let rev: Vec<usize> = p.iter().rev().copied().collect();
            assert!(w.contains(&rev));
        }
        assert!(watch_list(4).is_empty());
    }

    #[test]
    fn trial_lines_replays_the_census_draw() {
        let p = params(ObjectClass::OrientedLines, 3, 8, 3, 3);
        let c = census(&p).unwrap();
        let mut seen = BTreeMap::new();
        for t in 0..3 {
            let ls = trial_lines(&p, t).unwrap();
            let idx = find_homogeneous(&ls, 3).unwrap().unwrap();
            let sub: Vec<OrientedLine> = idx.iter().map(|&i| ls[i - 1].clone()).collect();
            let ty = lines::sequence_type(&sub).unwrap().unwrap();
            *seen.entry(ty.to_string()).or_insert(0u64) += 1;
        }
        assert_eq!(seen, c.histogram);
    }
}
