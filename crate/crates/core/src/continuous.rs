//! Continuous one-parameter families of oriented lines and the Vandermonde
//! identities behind their universality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, Matrix, Vector};
use crate::lines::{self, LineTupleType, OrientedLine};

/// Checks `0 < t_1 < … < t_r`.
fn check_increasing_positive(ts: &[ExactScalar]) -> Result<()> {
    if ts.first().is_some_and(|t| !t.is_positive()) {
        return Err(Error::InvalidParameter("parameters must be positive".into()));
    }
    if let Some(w) = ts.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "parameters must strictly increase, t_{} = {} and t_{} = {}",
            w + 1,
            ts[w],
            w + 2,
            ts[w + 1]
        )));
    }
    Ok(())
}

/// `det [t_c^{e_r}]` with rows indexed by `exponents` and columns by `ts`.
pub fn power_determinant(ts: &[ExactScalar], exponents: &[u32]) -> Result<ExactScalar> {
    let rows = exponents
        .iter()
        .map(|&e| ts.iter().map(|t| t.pow(e)).collect())
        .collect();
    Matrix::from_rows(rows)?.det()
}

/// Principal Vandermondian `∏_{i>j} (t_i − t_j)`.
pub fn vandermonde(ts: &[ExactScalar]) -> Result<ExactScalar> {
    check_increasing_positive(ts)?;
    let mut acc = ExactScalar::one();
    for (i, ti) in ts.iter().enumerate() {
        for tj in &ts[..i] {
            acc *= ti - tj;
        }
    }
    Ok(acc)
}

/// `V_j`: the power determinant with exponents `{0, …, d-1} ∖ {d-1-j}`,
/// where `d = ts.len() + 1`. `j = 0` gives back the principal Vandermondian.
pub fn secondary_vandermonde(ts: &[ExactScalar], j: usize) -> Result<ExactScalar> {
    check_increasing_positive(ts)?;
    let d = ts.len() + 1;
    if j >= d {
        return Err(Error::InvalidParameter(format!(
            "secondary index must lie in 0..={}, got {j}",
            d - 1
        )));
    }
    let skip = (d - 1 - j) as u32;
    let exps: Vec<u32> = (0..d as u32).filter(|&e| e != skip).collect();
    power_determinant(ts, &exps)
}

/// Elementary symmetric polynomial `E_j(t_1, …, t_r)`.
pub fn elem_symmetric(ts: &[ExactScalar], j: usize) -> ExactScalar {
    // e[k] holds E_k of the prefix processed so far
    let mut e = vec![ExactScalar::zero(); j + 1];
    e[0] = ExactScalar::one();
    for t in ts {
        for k in (1..=j).rev() {
            let add = &e[k - 1] * t;
            e[k] += add;
        }
    }
    e.swap_remove(j)
}

/// Determinant of the matrix whose first column is
/// `(a_1, −a_2, …, (−1)^{d-1} a_d)` and whose other columns are
/// `(1, t_i, …, t_i^{d-1})`.
pub fn det_a(a: &[ExactScalar], ts: &[ExactScalar]) -> Result<ExactScalar> {
    check_increasing_positive(ts)?;
    if a.len() != ts.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: ts.len() + 1,
            got: a.len(),
        });
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter("coefficients must be positive".into()));
    }
    let rows = (0..a.len())
        .map(|r| {
            let first = if r % 2 == 0 { a[r].clone() } else { -&a[r] };
            std::iter::once(first)
                .chain(ts.iter().map(|t| t.pow(r as u32)))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)?.det()
}

/// Polynomial with rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial(pub Vec<ExactScalar>);

impl Polynomial {
    pub fn eval(&self, t: &ExactScalar) -> ExactScalar {
        self.0
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * t + c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `v(t) = (1, t, …, t^{d-1})`, `a(t) = (a_1(t), −a_2(t), …)`.
    Generic,
    /// Rulings of `x² + y² = z² + 1`, parametrised by `s ∈ (−1, 1)`.
    Hyperboloid,
    /// `a(t) = (t, 0, …, 0)`, `v(t) = (1, t, …, t^{d-1})`.
    MomentDirection,
}

/// Open parameter interval; a missing end is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: Option<ExactScalar>,
    pub hi: Option<ExactScalar>,
}

impl Domain {
    pub fn contains(&self, t: &ExactScalar) -> bool {
        self.lo.as_ref().is_none_or(|lo| t > lo) && self.hi.as_ref().is_none_or(|hi| t < hi)
    }

    /// `count` increasing interior parameters: equally spaced on a bounded
    /// interval, unit steps away from the finite end otherwise.
    pub fn sample(&self, count: usize) -> Vec<ExactScalar> {
        let steps = count as i64 + 1;
        (1..=count as i64)
            .map(|k| match (&self.lo, &self.hi) {
                (Some(lo), Some(hi)) => lo + &(&(hi - lo) * &ExactScalar::ratio(k, steps)),
                (Some(lo), None) => lo + &ExactScalar::from(k),
                (None, Some(hi)) => hi - &ExactScalar::from(steps - k),
                (None, None) => ExactScalar::ratio(2 * k - steps, 2),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub d: usize,
    pub kind: FamilyKind,
    /// `a_1, …, a_d` for the generic kind.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
}

impl FamilySpec {
    pub fn generic(coefficients: Vec<Polynomial>) -> Self {
        FamilySpec {
            d: coefficients.len(),
            kind: FamilyKind::Generic,
            coefficients,
            domain: None,
        }
    }

    pub fn hyperboloid() -> Self {
        FamilySpec {
            d: 3,
            kind: FamilyKind::Hyperboloid,
            coefficients: Vec::new(),
            domain: None,
        }
    }

    pub fn moment_direction(d: usize) -> Self {
        FamilySpec {
            d,
            kind: FamilyKind::MomentDirection,
            coefficients: Vec::new(),
            domain: None,
        }
    }

    /// The explicit domain, or the kind's default: `(0, ∞)`, `(−1, 1)`, `(0, 1)`.
    pub fn effective_domain(&self) -> Domain {
        if let Some(d) = &self.domain {
            return d.clone();
        }
        match self.kind {
            FamilyKind::Generic => Domain {
                lo: Some(ExactScalar::zero()),
                hi: None,
            },
            FamilyKind::Hyperboloid => Domain {
                lo: Some(ExactScalar::from(-1)),
                hi: Some(ExactScalar::one()),
            },
            FamilyKind::MomentDirection => Domain {
                lo: Some(ExactScalar::zero()),
                hi: Some(ExactScalar::one()),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidParameter("families need d >= 2".into()));
        }
        match self.kind {
            FamilyKind::Generic if self.coefficients.len() != self.d => {
                Err(Error::InvalidParameter(format!(
                    "generic family in R^{} needs {} coefficient polynomials, got {}",
                    self.d,
                    self.d,
                    self.coefficients.len()
                )))
            }
            FamilyKind::Hyperboloid if self.d != 3 => Err(Error::InvalidParameter(
                "the hyperboloid family lives in R^3".into(),
            )),
            _ => Ok(()),
        }
    }
}

fn moment_vector(t: &ExactScalar, d: usize) -> Vector {
    Vector::new((0..d as u32).map(|k| t.pow(k)).collect())
}

pub fn family_line(spec: &FamilySpec, t: &ExactScalar) -> Result<OrientedLine> {
    spec.validate()?;
    if !spec.effective_domain().contains(t) {
        return Err(Error::InvalidParameter(format!("parameter {t} lies outside the domain")));
    }
    let d = spec.d;
    match spec.kind {
        FamilyKind::Generic => {
            let a = spec
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let v = p.eval(t);
                    if k % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            OrientedLine::new(Vector::new(a), moment_vector(t, d))
        }
        FamilyKind::Hyperboloid => {
            let one = ExactScalar::one();
            let denom = &one + &(t * t);
            let cos = &(&one - &(t * t)) / &denom;
            let sin = &(t * &ExactScalar::from(2)) / &denom;
            let a = Vector::new(vec![cos.clone(), sin.clone(), ExactScalar::zero()]);
            let v = Vector::new(vec![-sin, cos, one]);
            OrientedLine::new(a, v)
        }
        FamilyKind::MomentDirection => {
            let mut a = vec![ExactScalar::zero(); d];
            a[0] = t.clone();
            OrientedLine::new(Vector::new(a), moment_vector(t, d))
        }
    }
}

pub fn family_lines(spec: &FamilySpec, ts: &[ExactScalar]) -> Result<Vec<OrientedLine>> {
    ts.iter().map(|t| family_line(spec, t)).collect()
}

/// Common type of the lines sampled at `ts`, if homogeneous.
pub fn family_type_check(spec: &FamilySpec, ts: &[ExactScalar]) -> Result<Option<LineTupleType>> {
    family_type_check_par(spec, ts, 1)
}

pub fn family_type_check_par(
    spec: &FamilySpec,
    ts: &[ExactScalar],
    jobs: usize,
) -> Result<Option<LineTupleType>> {
    if let Some(w) = ts.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "sample parameters must strictly increase (positions {} and {})",
            w + 1,
            w + 2
        )));
    }
    lines::sequence_type_par(&family_lines(spec, ts)?, jobs)
}

/// Whether every generic coefficient is positive and increasing across the
/// samples `ts`. This only looks at the given points.
pub fn coefficients_positive_increasing_at(spec: &FamilySpec, ts: &[ExactScalar]) -> bool {
    spec.coefficients.iter().all(|p| {
        let vals: Vec<ExactScalar> = ts.iter().map(|t| p.eval(t)).collect();
        vals.iter().all(ExactScalar::is_positive) && vals.windows(2).all(|w| w[0] < w[1])
    })
}
