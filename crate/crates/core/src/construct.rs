//! Homogeneous oriented-line sequences whose type is a prescribed two-sided
//! stacked permutation.
//!
//! Lines come from the special columns `c = x(d+1)` of a `2d × n(d+1)`
//! matrix: odd rows give the direction `v_c`, even rows give `B_c`, and
//! `a_c = γ_x Σ_j δ_j [b_c]_j v_{c-j}` with `[b]_i = ∏_{j>d-i} [B]_j`.
//! Every result is checked by exact computation of all `(d-1)`-tuple types.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, Vector};
use crate::lines::{self, format_perm, LineTupleType, OrientedLine};
use crate::rimatrix::{self, BuildOptions, RIMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Left,
    Right,
}

/// Insertion recipe: ascending specs insert `2, …, d-1` after starting from
/// `1`, descending specs insert `d-2, …, 1` after starting from `d-1`.
///
/// Text form is `asc:RRL` / `desc:LR`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StackedSpec {
    pub d: usize,
    pub family: Family,
    pub ends: Vec<End>,
}

impl StackedSpec {
    pub fn new(d: usize, family: Family, ends: Vec<End>) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(format!("stacked specs need d >= 3, got {d}")));
        }
        if ends.len() != d - 2 {
            return Err(Error::InvalidParameter(format!(
                "d = {d} needs {} insertion ends, got {}",
                d - 2,
                ends.len()
            )));
        }
        Ok(StackedSpec { d, family, ends })
    }

    /// Parses the text form; `d` is implied by the number of ends.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad stacked spec {s:?}, expected e.g. asc:RL"));
        let (fam, ends) = s.trim().split_once(':').ok_or_else(bad)?;
        let family = match fam {
            "asc" => Family::Ascending,
            "desc" => Family::Descending,
            _ => return Err(bad()),
        };
        let ends = ends
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(End::Left),
                'R' | 'r' => Ok(End::Right),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        StackedSpec::new(ends.len() + 2, family, ends)
    }

    /// Parses and checks the dimension.
    pub fn parse_for(s: &str, d: usize) -> Result<Self> {
        let spec = Self::parse(s)?;
        if spec.d != d {
            return Err(Error::InvalidParameter(format!(
                "spec {s:?} has {} ends, d = {d} needs {}",
                spec.ends.len(),
                d.saturating_sub(2)
            )));
        }
        Ok(spec)
    }
}

impl fmt::Display for StackedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::Ascending => "asc",
            Family::Descending => "desc",
        };
        let ends: String = self
            .ends
            .iter()
            .map(|e| if *e == End::Left { 'L' } else { 'R' })
            .collect();
        write!(f, "{fam}:{ends}")
    }
}

impl FromStr for StackedSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StackedSpec::parse(s)
    }
}

impl Serialize for StackedSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StackedSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn stacked_permutation(spec: &StackedSpec) -> Vec<usize> {
    let d = spec.d;
    let order: Vec<usize> = match spec.family {
        Family::Ascending => (1..d).collect(),
        Family::Descending => (1..d).rev().collect(),
    };
    let mut seq = std::collections::VecDeque::from([order[0]]);
    for (&value, end) in order[1..].iter().zip(&spec.ends) {
        match end {
            End::Left => seq.push_front(value),
            End::Right => seq.push_back(value),
        }
    }
    seq.into()
}

/// Every prefix `{1..v}` (or every suffix `{v..r}`) of values sits in a
/// contiguous block.
pub fn is_two_sided_stacked(sigma: &[usize]) -> bool {
    if !lines::is_permutation(sigma) {
        return false;
    }
    let r = sigma.len();
    let mut pos = vec![0; r + 1];
    for (p, &v) in sigma.iter().enumerate() {
        pos[v] = p;
    }
    let contiguous = |values: &mut dyn Iterator<Item = usize>| {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for (count, v) in values.enumerate() {
            lo = lo.min(pos[v]);
            hi = hi.max(pos[v]);
            if hi - lo != count {
                return false;
            }
        }
        true
    };
    contiguous(&mut (1..=r)) || contiguous(&mut (1..=r).rev())
}

/// All specs of dimension `d`, ascending first, ends in `L < R` order.
pub fn all_specs(d: usize) -> Vec<StackedSpec> {
    let mut out = Vec::new();
    if d < 3 {
        return out;
    }
    for family in [Family::Ascending, Family::Descending] {
        for ends in std::iter::repeat_n([End::Left, End::Right], d.saturating_sub(2))
            .multi_cartesian_product()
        {
            out.push(StackedSpec { d, family, ends });
        }
    }
    out
}

pub fn enumerate_stacked(d: usize) -> BTreeSet<Vec<usize>> {
    all_specs(d).iter().map(stacked_permutation).collect()
}

/// Ascending spec whose permutation is `sigma`, if it is ascending stacked.
fn ascending_spec_of(sigma: &[usize]) -> Option<StackedSpec> {
    let d = sigma.len() + 1;
    let pos = |v: usize| sigma.iter().position(|&x| x == v);
    let mut ends = Vec::with_capacity(d - 2);
    for v in 2..d {
        let p = pos(v)?;
        let smaller: Vec<usize> = (1..v).map(|w| pos(w).unwrap_or(0)).collect();
        if smaller.iter().all(|&q| q < p) {
            ends.push(End::Right);
        } else if smaller.iter().all(|&q| q > p) {
            ends.push(End::Left);
        } else {
            return None;
        }
    }
    let spec = StackedSpec::new(d, Family::Ascending, ends).ok()?;
    (stacked_permutation(&spec) == sigma).then_some(spec)
}

/// Type of the reversed sequence, given the type of the original.
pub fn reversed_sequence_type(sigma: &[usize]) -> Vec<usize> {
    let r = sigma.len();
    let d = r + 1;
    let complement = sigma.iter().map(|&s| d - s);
    // reversing the order of the d-1 directions changes the sign of their wedge
    if (r * (r - 1) / 2) % 2 == 1 {
        complement.rev().collect()
    } else {
        complement.collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuildMode {
    ExactRi,
    Tuned,
}

impl FromStr for BuildMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-ri" => Ok(BuildMode::ExactRi),
            "tuned" => Ok(BuildMode::Tuned),
            _ => Err(Error::Parse(format!("unknown mode {s:?}, expected exact-ri or tuned"))),
        }
    }
}

impl fmt::Display for BuildMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildMode::ExactRi => "exact-ri",
            BuildMode::Tuned => "tuned",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    pub jobs: usize,
    /// Tuned-mode template stretch; defaults to `m + 1`.
    pub s: Option<u64>,
    /// Tuned-mode `γ*_x = 2^(g(x-1))` exponent step; defaults to `s`.
    pub g: Option<u64>,
    pub retries: u32,
    /// Exact-ri mode `ε`; defaults to `1 / (100 (d+1))`.
    pub epsilon: Option<ExactScalar>,
    pub budget_bits: u64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            jobs: 1,
            s: None,
            g: None,
            retries: 8,
            epsilon: None,
            budget_bits: rimatrix::DEFAULT_BUDGET_BITS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<ExactScalar>,
    pub attempts: u32,
    /// Lines are the ascending construction in reverse order.
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalLineSequence {
    pub d: usize,
    pub n: usize,
    pub lines: Vec<OrientedLine>,
    pub spec: StackedSpec,
    pub mode: BuildMode,
    pub matrix: RIMatrix,
    pub delta: Vec<i8>,
    pub gammas: Vec<BigUint>,
    pub parameters: Parameters,
    pub verified: bool,
}

impl UniversalLineSequence {
    pub fn target(&self) -> Vec<usize> {
        stacked_permutation(&self.spec)
    }
}

/// `δ` for an ascending spec: position `i ≥ 2` of a tuple lands right of all
/// earlier positions exactly when `(-1)^(i-1) δ_{d+1-i} > 0`.
pub fn delta_for(spec: &StackedSpec) -> Vec<i8> {
    let d = spec.d;
    let mut delta = vec![1i8; d];
    for i in 2..d {
        let side: i8 = if spec.ends[i - 2] == End::Right { 1 } else { -1 };
        let parity: i8 = if (i - 1) % 2 == 0 { 1 } else { -1 };
        delta[d - i] = parity * side;
    }
    delta
}

fn column(mat: &RIMatrix, parity: usize, c: usize, d: usize) -> Vec<BigUint> {
    (1..=d).map(|i| mat.get(2 * i - 1 + parity, c).clone()).collect()
}

/// `[b]_i = ∏_{j=d+1-i}^{d} [B]_j` for column `c`.
fn b_vector(mat: &RIMatrix, c: usize, d: usize) -> Vec<BigUint> {
    let big_b = column(mat, 1, c, d);
    (1..=d)
        .map(|i| big_b[d - i..].iter().product())
        .collect()
}

/// Unscaled base point `Σ_j δ_j [b_c]_j v_{c-j}` of the line at special column `c`.
fn base_point(mat: &RIMatrix, d: usize, c: usize, delta: &[i8]) -> Vec<BigInt> {
    let b = b_vector(mat, c, d);
    let mut a = vec![BigInt::from(0); d];
    for j in 1..=d {
        let coeff = BigInt::from(b[j - 1].clone()) * i32::from(delta[j - 1]);
        for (k, vk) in column(mat, 0, c - j, d).into_iter().enumerate() {
            a[k] += &coeff * BigInt::from(vk);
        }
    }
    a
}

/// Lines for special columns `x(d+1)`, `x = 1..=n`, with the given `γ*`.
pub fn lines_from_matrix(
    mat: &RIMatrix,
    d: usize,
    n: usize,
    delta: &[i8],
    gammas: &[BigUint],
) -> Result<Vec<OrientedLine>> {
    if mat.rows != 2 * d || mat.m < n * (d + 1) {
        return Err(Error::InvalidParameter(format!(
            "need a {}x{} matrix, got {}x{}",
            2 * d,
            n * (d + 1),
            mat.rows,
            mat.m
        )));
    }
    (1..=n)
        .map(|x| {
            let c = x * (d + 1);
            let gamma = BigInt::from(gammas[x - 1].clone());
            let a: Vec<ExactScalar> = base_point(mat, d, c, delta)
                .into_iter()
                .map(|t| ExactScalar::from(t * &gamma))
                .collect();
            let v: Vec<ExactScalar> = column(mat, 0, c, d).into_iter().map(ExactScalar::from).collect();
            OrientedLine::new(Vector::new(a), Vector::new(v))
        })
        .collect()
}

/// Magnitude `P [b_i]_{d+1-i} [(v_i)_{-(d+1-i)}]_i` of `det(a_i | v_1 … v_{d-1})`
/// without its `γ` factor, for the tuple of special-column indices `xs`.
fn leading_term(mat: &RIMatrix, d: usize, xs: &[usize], i: usize) -> BigUint {
    let v = |x: usize, row: usize| mat.get(2 * row - 1, x * (d + 1)).clone();
    let mut p = BigUint::one();
    for (k, &x) in xs.iter().enumerate() {
        let pos = k + 1;
        if pos < i {
            p *= v(x, pos);
        } else if pos > i {
            p *= v(x, pos + 1);
        }
    }
    let dom = d + 1 - i;
    let c = xs[i - 1] * (d + 1);
    let b = b_vector(mat, c, d);
    p * &b[dom - 1] * mat.get(2 * i - 1, c - dom)
}

/// `γ*_x` from the finite bound sets: `γ*_1 = 1` and `γ*_x` is the least
/// integer with `max V_x < (ε/10) γ*_x min Z_x`.
pub fn claim_gammas(mat: &RIMatrix, d: usize, n: usize, epsilon: &ExactScalar) -> Result<Vec<BigUint>> {
    let ep = epsilon.numer().to_biguint().filter(|_| epsilon.is_positive());
    let ep = ep.ok_or_else(|| Error::InvalidParameter("epsilon must be positive".into()))?;
    let eq = epsilon.denom().to_biguint().expect("positive denominator");
    let mut gammas = vec![BigUint::one()];
    for x in 2..=n {
        let mut min_z: Option<BigUint> = None;
        let mut max_v = BigUint::from(0u32);
        for xs in (1..=n).combinations(d - 1) {
            let Some(ix) = xs.iter().position(|&y| y == x) else {
                continue;
            };
            if ix == 0 {
                continue;
            }
            let z = leading_term(mat, d, &xs, ix + 1);
            if min_z.as_ref().is_none_or(|mz| z < *mz) {
                min_z = Some(z);
            }
            for h in 0..ix {
                let val = &gammas[xs[h] - 1] * leading_term(mat, d, &xs, h + 1);
                if val > max_v {
                    max_v = val;
                }
            }
        }
        let g = match min_z {
            // γ > 10 max V / (ε min Z)
            Some(z) => (max_v * 10u32 * &eq).div_floor(&(z * &ep)) + 1u32,
            None => gammas[x - 2].clone(),
        };
        gammas.push(g);
    }
    Ok(gammas)
}

/// First tuple (1-based) whose type differs from `target`.
fn first_mismatch(lines_: &[OrientedLine], target: &[usize], jobs: usize) -> Result<Option<(Vec<usize>, String)>> {
    let d = lines_[0].dim();
    let types = lines::tuple_types_par(lines_, jobs)?;
    for (t, ty) in (1..=lines_.len()).combinations(d - 1).zip(types) {
        match ty {
            Ok(ty) if ty.sigma == target => {}
            Ok(ty) => return Ok(Some((t, format!("type {ty}")))),
            Err(e) => return Ok(Some((t, e.to_string()))),
        }
    }
    Ok(None)
}

pub fn build_universal_lines(
    d: usize,
    n: usize,
    spec: &StackedSpec,
    mode: BuildMode,
    opts: &ConstructOptions,
) -> Result<UniversalLineSequence> {
    if spec.d != d {
        return Err(Error::InvalidParameter(format!(
            "spec {spec} is for d = {}, not d = {d}",
            spec.d
        )));
    }
    if n < d - 1 {
        return Err(Error::InvalidParameter(format!("need n >= d - 1 = {}, got {n}", d - 1)));
    }
    let target = stacked_permutation(spec);
    let (build_spec, reversed) = match spec.family {
        Family::Ascending => (spec.clone(), false),
        Family::Descending => {
            let mirror = reversed_sequence_type(&target);
            let asc = ascending_spec_of(&mirror).ok_or_else(|| {
                Error::InvalidParameter(format!("no ascending mirror for {spec}"))
            })?;
            (asc, true)
        }
    };
    let delta = delta_for(&build_spec);
    let m = n * (d + 1);

    let finish = |matrix: RIMatrix, gammas: Vec<BigUint>, parameters: Parameters| -> Result<UniversalLineSequence> {
        let mut lines_ = lines_from_matrix(&matrix, d, n, &delta, &gammas)?;
        if reversed {
            lines_.reverse();
        }
        Ok(UniversalLineSequence {
            d,
            n,
            lines: lines_,
            spec: spec.clone(),
            mode,
            matrix,
            delta: delta.clone(),
            gammas,
            parameters,
            verified: false,
        })
    };

    match mode {
        BuildMode::Tuned => {
            let mut s = opts.s.unwrap_or(m as u64 + 1);
            let mut g = opts.g.unwrap_or(s);
            let mut last = None;
            for attempt in 0..=opts.retries {
                let matrix = rimatrix::build_stretched(d, m, s)?;
                let gammas = (0..n as u64).map(|x| BigUint::one() << (g * x)).collect();
                let params = Parameters {
                    s: Some(s),
                    g: Some(g),
                    epsilon: None,
                    attempts: attempt + 1,
                    reversed,
                };
                let mut seq = finish(matrix, gammas, params)?;
                match first_mismatch(&seq.lines, &target, opts.jobs)? {
                    None => {
                        seq.verified = true;
                        return Ok(seq);
                    }
                    Some(f) => last = Some(f),
                }
                s *= 2;
                g *= 2;
            }
            let (tuple, what) = last.expect("at least one attempt");
            Err(Error::VerificationFailed(format!(
                "{spec}: tuple {tuple:?} has {what}, expected {} after {} attempts",
                format_perm(&target),
                opts.retries + 1
            )))
        }
        BuildMode::ExactRi => {
            let eps = opts
                .epsilon
                .clone()
                .unwrap_or_else(|| ExactScalar::ratio(1, 100 * (d as i64 + 1)));
            let build_opts = BuildOptions {
                budget_bits: opts.budget_bits,
                ..BuildOptions::default()
            };
            let (matrix, _) = rimatrix::build_exact_with(2 * d, m, &eps, &build_opts)?;
            let gammas = claim_gammas(&matrix, d, n, &eps)?;
            let params = Parameters {
                s: None,
                g: None,
                epsilon: Some(eps),
                attempts: 1,
                reversed,
            };
            let mut seq = finish(matrix, gammas, params)?;
            if let Some((tuple, what)) = first_mismatch(&seq.lines, &target, opts.jobs)? {
                return Err(Error::VerificationFailed(format!(
                    "{spec}: tuple {tuple:?} has {what}, expected {}",
                    format_perm(&target)
                )));
            }
            seq.verified = true;
            Ok(seq)
        }
    }
}

/// Re-checks a sequence against its spec; sets and returns `verified`.
pub fn verify_sequence(seq: &mut UniversalLineSequence, jobs: usize) -> Result<bool> {
    let ty = lines::sequence_type_par(&seq.lines, jobs)?;
    seq.verified = ty == Some(LineTupleType {
        d: seq.d,
        sigma: seq.target(),
    });
    Ok(seq.verified)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionDominance {
    pub position: usize,
    /// `T_1, …, T_d`.
    pub terms: Vec<BigUint>,
    /// `d + 1 - position`.
    pub dominant: usize,
    pub strict: bool,
    /// All other terms are below `ε` times the dominant one; `None` without `ε`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_epsilon: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub tuple: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<ExactScalar>,
    pub positions: Vec<PositionDominance>,
    pub passed: bool,
}

/// Terms `T_j = [b_i]_j [(v_i)_{-j}]_i` for lines at special-column indices
/// `xs` (increasing, 1-based) of `mat`.
pub fn dominance_from_matrix(
    mat: &RIMatrix,
    d: usize,
    xs: &[usize],
    epsilon: Option<&ExactScalar>,
) -> Result<DominanceReport> {
    if xs.len() != d - 1 || mat.rows != 2 * d {
        return Err(Error::InvalidParameter(format!(
            "need d - 1 = {} columns of a {}-row matrix",
            d - 1,
            2 * d
        )));
    }
    if xs.iter().any(|&x| x == 0 || x * (d + 1) > mat.m) {
        return Err(Error::InvalidParameter(format!("column index out of range in {xs:?}")));
    }
    let mut positions = Vec::with_capacity(d - 1);
    for (k, &x) in xs.iter().enumerate() {
        let i = k + 1;
        let c = x * (d + 1);
        let b = b_vector(mat, c, d);
        let terms: Vec<BigUint> = (1..=d).map(|j| &b[j - 1] * mat.get(2 * i - 1, c - j)).collect();
        let dominant = d + 1 - i;
        let top = &terms[dominant - 1];
        let others = terms.iter().enumerate().filter(|(j, _)| j + 1 != dominant);
        let strict = others.clone().all(|(_, t)| t < top);
        let within_epsilon = epsilon.map(|e| {
            let p = e.numer().magnitude().clone();
            let q = e.denom().magnitude().clone();
            others.clone().all(|(_, t)| t * &q < top * &p)
        });
        positions.push(PositionDominance {
            position: i,
            terms,
            dominant,
            strict,
            within_epsilon,
        });
    }
    let passed = positions
        .iter()
        .all(|p| p.strict && p.within_epsilon != Some(false));
    Ok(DominanceReport {
        tuple: xs.to_vec(),
        epsilon: epsilon.cloned(),
        positions,
        passed,
    })
}

/// Dominance audit for one `(d-1)`-tuple of sequence indices (1-based, increasing).
pub fn dominance_report(seq: &UniversalLineSequence, tuple: &[usize]) -> Result<DominanceReport> {
    let xs: Vec<usize> = if seq.parameters.reversed {
        tuple.iter().rev().map(|&t| seq.n + 1 - t).collect()
    } else {
        tuple.to_vec()
    };
    let eps = match seq.mode {
        BuildMode::ExactRi => seq.parameters.epsilon.as_ref(),
        BuildMode::Tuned => None,
    };
    let mut report = dominance_from_matrix(&seq.matrix, seq.d, &xs, eps)?;
    report.tuple = tuple.to_vec();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> StackedSpec {
        StackedSpec::parse(s).unwrap()
    }

    #[test]
    fn ten_element_instance() {
        let s = spec("asc:RRLLRRLLR");
        assert_eq!(s.d, 11);
        assert_eq!(stacked_permutation(&s), vec![9, 8, 5, 4, 1, 2, 3, 6, 7, 10]);
    }

    #[test]
    fn simple_permutations() {
        assert_eq!(stacked_permutation(&spec("asc:RR")), vec![1, 2, 3]);
        assert_eq!(stacked_permutation(&spec("asc:LL")), vec![3, 2, 1]);
        assert_eq!(stacked_permutation(&spec("desc:RR")), vec![3, 2, 1]);
        assert_eq!(stacked_permutation(&spec("desc:LR")), vec![2, 3, 1]);
    }

    #[test]
    fn spec_text() {
        assert_eq!(spec("desc:LRL").to_string(), "desc:LRL");
        assert!(StackedSpec::parse("up:LR").is_err());
        assert!(StackedSpec::parse("asc:LX").is_err());
        assert!(StackedSpec::parse_for("asc:LR", 5).is_err());
        assert!(StackedSpec::new(4, Family::Ascending, vec![End::Left]).is_err());
    }

    #[test]
    fn stacked_counts() {
        for d in 3..=8 {
            assert_eq!(enumerate_stacked(d).len(), (1 << (d - 1)) - 2, "d = {d}");
        }
        assert_eq!(enumerate_stacked(5).len(), 14);
    }

    #[test]
    fn membership() {
        for p in [[2, 1, 4, 3], [2, 4, 1, 3], [1, 3, 2, 4], [4, 1, 3, 2], [1, 4, 2, 3]] {
            assert!(!is_two_sided_stacked(&p), "{p:?}");
        }
        for r in 1..7 {
            let id: Vec<usize> = (1..=r).collect();
            assert!(is_two_sided_stacked(&id));
        }
        let all = enumerate_stacked(6);
        let members = (1..=5usize)
            .permutations(5)
            .filter(|p| is_two_sided_stacked(p))
            .collect::<BTreeSet<_>>();
        assert_eq!(all, members);
    }

    #[test]
    fn mirror_specs_exist() {
        for d in 3..=7 {
            for s in all_specs(d).into_iter().filter(|s| s.family == Family::Descending) {
                let target = stacked_permutation(&s);
                let mirror = reversed_sequence_type(&target);
                let asc = ascending_spec_of(&mirror).expect("mirror is ascending stacked");
                assert_eq!(stacked_permutation(&asc), mirror);
            }
        }
    }

    #[test]
    fn delta_signs() {
        // d = 4, asc:RL: position 2 right -> delta_3 = -1, position 3 left -> delta_2 = -1
        assert_eq!(delta_for(&spec("asc:RL")), vec![1, -1, -1, 1]);
        assert_eq!(delta_for(&spec("asc:R")), vec![1, -1, 1]);
    }

    #[test]
    fn tuned_d3() {
        let seq = build_universal_lines(3, 4, &spec("asc:R"), BuildMode::Tuned, &ConstructOptions::default()).unwrap();
        assert!(seq.verified);
        assert_eq!(seq.lines.len(), 4);
        let ty = lines::sequence_type(&seq.lines).unwrap().unwrap();
        assert_eq!(ty.sigma, vec![1, 2]);
    }

    #[test]
    fn tuned_descending_reverses() {
        let s = spec("desc:LR");
        let seq = build_universal_lines(4, 5, &s, BuildMode::Tuned, &ConstructOptions::default()).unwrap();
        assert!(seq.parameters.reversed);
        let ty = lines::sequence_type(&seq.lines).unwrap().unwrap();
        assert_eq!(ty.sigma, stacked_permutation(&s));
    }

    #[test]
    fn wrong_dimension_rejected() {
        let r = build_universal_lines(4, 5, &spec("asc:R"), BuildMode::Tuned, &ConstructOptions::default());
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn exact_ri_refused_by_guardrail() {
        let r = build_universal_lines(3, 2, &spec("asc:R"), BuildMode::ExactRi, &ConstructOptions::default());
        assert!(matches!(r, Err(Error::GuardrailRefusal { .. })), "{r:?}");
    }

    #[test]
    fn tuned_dominance_is_strict() {
        let seq = build_universal_lines(4, 5, &spec("asc:LR"), BuildMode::Tuned, &ConstructOptions::default()).unwrap();
        for t in (1..=5).combinations(3) {
            let rep = dominance_report(&seq, &t).unwrap();
            assert!(rep.passed, "{t:?}");
            assert!(rep.positions.iter().all(|p| p.within_epsilon.is_none()));
        }
    }

    #[test]
    fn equal_entries_fail_dominance() {
        let mat = RIMatrix::from_rows(
            vec![vec![BigUint::from(3u32); 8]; 6],
            None,
            rimatrix::RiMode::StretchedTemplate,
        )
        .unwrap();
        let rep = dominance_from_matrix(&mat, 3, &[1, 2], None).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn claim_gammas_on_template() {
        let (d, n) = (4, 5);
        let s = spec("asc:LR");
        let m = n * (d + 1);
        let mat = rimatrix::build_stretched(d, m, m as u64 + 1).unwrap();
        let eps = ExactScalar::ratio(1, 500);
        let gammas = claim_gammas(&mat, d, n, &eps).unwrap();
        assert_eq!(gammas[0], BigUint::one());
        assert!(gammas.windows(2).all(|w| w[0] < w[1]));
        let delta = delta_for(&s);
        let ls = lines_from_matrix(&mat, d, n, &delta, &gammas).unwrap();
        let ty = lines::sequence_type(&ls).unwrap().unwrap();
        assert_eq!(ty.sigma, stacked_permutation(&s));
    }
}
