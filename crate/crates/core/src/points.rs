//! Order types, homogeneity and Radon partitions of point sequences.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{affine_dependence, ExactScalar, Matrix, Vector};
use crate::par;

/// An ordered sequence of points in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSequence {
    d: usize,
    points: Vec<Vector>,
}

impl PointSequence {
    pub fn new(d: usize, points: Vec<Vector>) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                });
            }
        }
        Ok(PointSequence { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Orientation of a `(d+1)`-tuple of points in `Q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-1")]
    Negative,
    #[serde(rename = "+1")]
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-1",
            Sign::Positive => "+1",
        })
    }
}

/// Determinant of the `(d+1) x (d+1)` matrix with columns `(1, p_i)`.
///
/// The row of ones comes first, which makes every increasing tuple on the
/// moment curve positive in every dimension (it is the Vandermonde
/// determinant). Putting the ones last multiplies the value by `(-1)^d`.
pub fn orientation_det(points: &[&Vector]) -> Result<ExactScalar> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "orientation needs at least two points".into(),
        ));
    }
    let d = n - 1;
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let mut rows = Vec::with_capacity(n);
    rows.push(vec![ExactScalar::one(); n]);
    rows.extend((0..d).map(|r| points.iter().map(|p| p[r].clone()).collect::<Vec<_>>()));
    Matrix::from_rows(rows)?.det()
}

pub fn orientation_sign(points: &[&Vector]) -> Result<Sign> {
    let det = orientation_det(points)?;
    match det.signum() {
        1 => Ok(Sign::Positive),
        -1 => Ok(Sign::Negative),
        _ => Err(Error::GeneralPosition {
            indices: (1..=points.len()).collect(),
            reason: "points lie on a common hyperplane".into(),
        }),
    }
}

/// The common orientation of all `(d+1)`-subsequences, or `None` when two
/// subsequences disagree.
pub fn homogeneous_sign(seq: &PointSequence) -> Result<Option<Sign>> {
    homogeneous_sign_par(seq, 1)
}

/// [`homogeneous_sign`] spread over `jobs` worker threads.
pub fn homogeneous_sign_par(seq: &PointSequence, jobs: usize) -> Result<Option<Sign>> {
    let r = seq.d + 1;
    if seq.len() < r {
        return Err(Error::InvalidParameter(format!(
            "need at least {r} points, got {}",
            seq.len()
        )));
    }
    let signs = par::map_tuples(seq.len(), r, jobs, |t| {
        let pts: Vec<&Vector> = t.iter().map(|&i| &seq.points[i]).collect();
        orientation_sign(&pts).map_err(|e| reindex(e, t))
    });
    common_value(signs)
}

/// Shifts a tuple-relative general-position error to 1-based sequence indices.
pub(crate) fn reindex(err: Error, tuple: &[usize]) -> Error {
    match err {
        Error::GeneralPosition { reason, .. } => Error::GeneralPosition {
            indices: tuple.iter().map(|i| i + 1).collect(),
            reason,
        },
        other => other,
    }
}

/// First error in enumeration order wins; otherwise the shared value, if any.
pub(crate) fn common_value<T: PartialEq>(values: Vec<Result<T>>) -> Result<Option<T>> {
    let mut first: Option<T> = None;
    let mut agree = true;
    for v in values {
        let v = v?;
        match &first {
            None => first = Some(v),
            Some(f) => {
                if *f != v {
                    agree = false;
                }
            }
        }
    }
    Ok(if agree { first } else { None })
}

/// Radon partition of `d + 2` points: `X` holds index 1 and `X ∪ Y = [d+2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadonPartition {
    pub n: usize,
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
}

impl RadonPartition {
    pub fn new(n: usize, x: BTreeSet<usize>, y: BTreeSet<usize>) -> Result<Self> {
        let valid = x.contains(&1)
            && !y.is_empty()
            && x.is_disjoint(&y)
            && x.len() + y.len() == n
            && x.iter().chain(&y).all(|&i| i >= 1 && i <= n);
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "not a Radon partition of [{n}]: X={x:?}, Y={y:?}"
            )));
        }
        Ok(RadonPartition { n, x, y })
    }

    /// Memberships alternate between `X` and `Y` in index order.
    pub fn is_interlacing(&self) -> bool {
        (1..=self.n).all(|i| self.x.contains(&i) == (i % 2 == 1))
    }
}

pub fn radon_partition(points: &[Vector]) -> Result<RadonPartition> {
    let lambda = affine_dependence(points)?;
    let n = points.len();
    let (x, y): (Vec<usize>, Vec<usize>) =
        (1..=n).partition(|&i| lambda[i - 1].is_positive());
    RadonPartition::new(n, x.into_iter().collect(), y.into_iter().collect())
}

pub fn is_interlacing(p: &RadonPartition) -> bool {
    p.is_interlacing()
}

/// `γ(t) = (t, t², …, t^d)`.
pub fn moment(t: &ExactScalar, d: usize) -> Vector {
    let mut out = Vec::with_capacity(d);
    let mut acc = ExactScalar::one();
    for _ in 0..d {
        acc = &acc * t;
        out.push(acc.clone());
    }
    Vector::new(out)
}

/// `γ*(t) = (t, …, t^{d-1}, -t^d)`.
pub fn moment_star(t: &ExactScalar, d: usize) -> Vector {
    let mut v = moment(t, d).into_coords();
    if let Some(last) = v.last_mut() {
        *last = -&*last;
    }
    Vector::new(v)
}

/// All orientation signs of the sequence in lexicographic tuple order
/// (the order type), one entry per `(d+1)`-subset.
pub fn order_type(seq: &PointSequence) -> Result<Vec<Sign>> {
    (0..seq.len())
        .combinations(seq.d + 1)
        .map(|t| {
            let pts: Vec<&Vector> = t.iter().map(|&i| &seq.points[i]).collect();
            orientation_sign(&pts).map_err(|e| reindex(e, &t))
        })
        .collect()
}
