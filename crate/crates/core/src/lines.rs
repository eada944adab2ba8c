//! Types of oriented `(d-1)`-tuples and unoriented `d`-tuples of lines.
//!
//! For an ordered tuple `(a_1, v_1), …, (a_{d-1}, v_{d-1})` the heights are
//! `h_i = det(a_i | v_1 | … | v_{d-1}) = u · a_i` with `u = v_1 ∧ … ∧ v_{d-1}`;
//! the type lists the tuple positions in increasing order of height.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{wedge_to_vector, ExactScalar, Vector};
use crate::par;
use crate::points::{common_value, reindex};

/// An oriented line `{a + t v}`; `(a, v)` and `(a + αv, βv)` with `β > 0`
/// name the same line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedLine {
    pub a: Vector,
    pub v: Vector,
}

impl OrientedLine {
    pub fn new(a: Vector, v: Vector) -> Result<Self> {
        a.check_dim(&v)?;
        if a.dim() < 2 {
            return Err(Error::InvalidParameter("lines need d >= 2".into()));
        }
        if v.is_zero() {
            return Err(Error::Degenerate("line direction is zero".into()));
        }
        Ok(OrientedLine { a, v })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Representative with `a ⟂ v` and `v` a primitive integer vector of the
    /// same orientation. Used for normalised output only.
    pub fn canonicalize(&self) -> OrientedLine {
        let vv = self.v.dot(&self.v).expect("same dimension");
        let av = self.a.dot(&self.v).expect("same dimension");
        let a = &self.a - &self.v.scale(&(av / vv));
        OrientedLine {
            a,
            v: self.v.primitive(),
        }
    }

    /// The same line with reversed orientation.
    pub fn flipped(&self) -> OrientedLine {
        OrientedLine {
            a: self.a.clone(),
            v: self.v.neg(),
        }
    }
}

/// A permutation of `[r]` in one-line notation, `sigma[p]` being the tuple
/// position with the `(p+1)`-th smallest height.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineTupleType {
    pub d: usize,
    pub sigma: Vec<usize>,
}

impl LineTupleType {
    pub fn identity(d: usize) -> Self {
        LineTupleType {
            d,
            sigma: (1..d).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        LineTupleType {
            d: self.d,
            sigma: self.sigma.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for LineTupleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_perm(&self.sigma))
    }
}

/// `"1 2 3"` style rendering of a permutation.
pub fn format_perm(p: &[usize]) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses `"1 2 3"`, `"1,2,3"` or `"123"` (single digits) into a permutation.
pub fn parse_perm(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let parts: Vec<&str> = if s.contains([' ', ',']) {
        s.split([' ', ',']).filter(|t| !t.is_empty()).collect()
    } else {
        s.split("").filter(|t| !t.is_empty()).collect()
    };
    let p: Vec<usize> = parts
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))
        })
        .collect::<Result<_>>()?;
    if !is_permutation(&p) {
        return Err(Error::Parse(format!("{s:?} is not a permutation of 1..={}", p.len())));
    }
    Ok(p)
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        x >= 1 && x <= p.len() && !std::mem::replace(&mut seen[x - 1], true)
    })
}

/// Tuple positions (1-based) sorted by increasing value; `None` on a tie.
pub(crate) fn rank_order(values: &[ExactScalar]) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].cmp(&values[j]));
    if idx.windows(2).any(|w| values[w[0]] == values[w[1]]) {
        return None;
    }
    Some(idx.into_iter().map(|i| i + 1).collect())
}

fn check_tuple(lines: &[&OrientedLine], expected: usize) -> Result<usize> {
    let d = lines.first().map_or(0, |l| l.dim());
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "line tuple types need d >= 3, got d = {d}"
        )));
    }
    if lines.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "expected {expected} lines in R^{d}, got {}",
            lines.len()
        )));
    }
    if let Some(bad) = lines.iter().find(|l| l.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: bad.dim(),
        });
    }
    Ok(d)
}

/// `u = v_1 ∧ … ∧ v_{d-1}` and the heights `h_i = u · a_i` of a `(d-1)`-tuple.
pub fn heights(lines: &[&OrientedLine]) -> Result<(Vector, Vec<ExactScalar>)> {
    let d = lines.first().map_or(0, |l| l.dim());
    check_tuple(lines, d.saturating_sub(1))?;
    let dirs: Vec<&Vector> = lines.iter().map(|l| &l.v).collect();
    let u = wedge_to_vector(&dirs)?;
    let h = lines
        .iter()
        .map(|l| u.dot(&l.a))
        .collect::<Result<Vec<_>>>()?;
    Ok((u, h))
}

/// `u ≠ 0` and the heights are pairwise distinct.
pub fn line_general_position(lines: &[&OrientedLine]) -> Result<bool> {
    let (u, h) = heights(lines)?;
    Ok(!u.is_zero() && rank_order(&h).is_some())
}

pub fn tuple_type(lines: &[&OrientedLine]) -> Result<LineTupleType> {
    let (u, h) = heights(lines)?;
    let d = u.dim();
    let fail = |reason: &str| Error::GeneralPosition {
        indices: (1..d).collect(),
        reason: reason.into(),
    };
    if u.is_zero() {
        return Err(fail("directions are linearly dependent"));
    }
    let sigma = rank_order(&h).ok_or_else(|| fail("two heights coincide"))?;
    Ok(LineTupleType { d, sigma })
}

fn check_sequence(lines: &[OrientedLine], r: usize) -> Result<()> {
    if lines.len() < r {
        return Err(Error::InvalidParameter(format!(
            "need at least {r} lines, got {}",
            lines.len()
        )));
    }
    Ok(())
}

/// The common type of all `(d-1)`-subsequences, or `None` when two differ.
pub fn sequence_type(lines: &[OrientedLine]) -> Result<Option<LineTupleType>> {
    sequence_type_par(lines, 1)
}

pub fn sequence_type_par(lines: &[OrientedLine], jobs: usize) -> Result<Option<LineTupleType>> {
    common_value(tuple_types_par(lines, jobs)?)
}

/// Types of every `(d-1)`-subsequence, in lexicographic tuple order.
pub fn tuple_types_par(
    lines: &[OrientedLine],
    jobs: usize,
) -> Result<Vec<Result<LineTupleType>>> {
    let d = lines.first().map_or(0, |l| l.dim());
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "line tuple types need d >= 3, got d = {d}"
        )));
    }
    check_sequence(lines, d - 1)?;
    Ok(par::map_tuples(lines.len(), d - 1, jobs, |t| {
        let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &lines[i]).collect();
        tuple_type(&tuple).map_err(|e| reindex(e, t))
    }))
}

/// Per-`j` canonical permutation pairs of an unoriented `d`-tuple.
///
/// Entry `j` ranks `h_{j,i} = det(a_i | v_1 … v̂_j … v_d)` over `i ≠ j`,
/// with the surviving indices renumbered `1..d-1`, and keeps the
/// lexicographically smaller of the order and its reverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnorientedTypeProfile {
    pub d: usize,
    pub pairs: Vec<Vec<usize>>,
}

impl fmt::Display for UnorientedTypeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|p| format!("{{{}}}", format_perm(p))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `min(σ, reverse σ)` in lexicographic order.
pub fn canonical_pair(sigma: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = sigma.iter().rev().copied().collect();
    if rev.as_slice() < sigma {
        rev
    } else {
        sigma.to_vec()
    }
}

pub fn unoriented_tuple_type(lines: &[&OrientedLine]) -> Result<UnorientedTypeProfile> {
    let d = lines.first().map_or(0, |l| l.dim());
    check_tuple(lines, d)?;
    let mut pairs = Vec::with_capacity(d);
    for j in 0..d {
        let dirs: Vec<&Vector> = (0..d).filter(|&i| i != j).map(|i| &lines[i].v).collect();
        let u = wedge_to_vector(&dirs)?;
        let fail = |reason: &str| Error::GeneralPosition {
            indices: (1..=d).collect(),
            reason: format!("{reason} for j = {}", j + 1),
        };
        if u.is_zero() {
            return Err(fail("directions other than v_j are dependent"));
        }
        let h = (0..d)
            .filter(|&i| i != j)
            .map(|i| u.dot(&lines[i].a))
            .collect::<Result<Vec<_>>>()?;
        let sigma = rank_order(&h).ok_or_else(|| fail("two heights coincide"))?;
        pairs.push(canonical_pair(&sigma));
    }
    Ok(UnorientedTypeProfile { d, pairs })
}

/// The shared pair when all `d` entries agree.
pub fn reduce_profile(p: &UnorientedTypeProfile) -> Option<Vec<usize>> {
    let first = p.pairs.first()?;
    p.pairs.iter().all(|q| q == first).then(|| first.clone())
}

/// Profiles of every `d`-subsequence, in lexicographic tuple order.
pub fn unoriented_tuple_types_par(
    lines: &[OrientedLine],
    jobs: usize,
) -> Result<Vec<Result<UnorientedTypeProfile>>> {
    let d = lines.first().map_or(0, |l| l.dim());
    check_sequence(lines, d)?;
    Ok(par::map_tuples(lines.len(), d, jobs, |t| {
        let tuple: Vec<&OrientedLine> = t.iter().map(|&i| &lines[i]).collect();
        unoriented_tuple_type(&tuple).map_err(|e| reindex(e, t))
    }))
}

/// The common profile of all `d`-subsequences, or `None` when two differ.
pub fn unoriented_sequence_type(lines: &[OrientedLine]) -> Result<Option<UnorientedTypeProfile>> {
    common_value(unoriented_tuple_types_par(lines, 1)?)
}
