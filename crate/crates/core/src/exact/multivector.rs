//! Homogeneous multivectors of the exterior algebra over `Q^d`.
//!
//! A basis blade `e_{i_1} ∧ … ∧ e_{i_k}` with `i_1 < … < i_k` is keyed by the
//! bitmask with bits `i_1 - 1, …, i_k - 1` set, so `d` is limited to 63.
//! The top blade `e_1 ∧ … ∧ e_d` pairs to 1.

use std::collections::BTreeMap;

use super::{ExactScalar, Matrix, Vector};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 63;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    dim: usize,
    grade: usize,
    coeffs: BTreeMap<u64, ExactScalar>,
}

/// Sign of `e_S ∧ e_T` relative to `e_{S ∪ T}`, or `None` when they overlap.
fn merge_sign(s: u64, t: u64) -> Option<i32> {
    if s & t != 0 {
        return None;
    }
    // each bit of t must hop over the bits of s above it
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        let above = if bit == 63 { 0 } else { s >> (bit + 1) };
        swaps += above.count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidParameter(format!(
            "multivector dimension must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

impl Multivector {
    pub fn zero(dim: usize, grade: usize) -> Result<Self> {
        check_dim(dim)?;
        if grade > dim {
            return Err(Error::InvalidParameter(format!(
                "grade {grade} exceeds dimension {dim}"
            )));
        }
        Ok(Multivector {
            dim,
            grade,
            coeffs: BTreeMap::new(),
        })
    }

    /// The scalar 1 (grade 0).
    pub fn scalar_one(dim: usize) -> Result<Self> {
        let mut mv = Self::zero(dim, 0)?;
        mv.coeffs.insert(0, ExactScalar::one());
        Ok(mv)
    }

    /// A single basis blade; `indices` are 1-based and must be strictly increasing.
    pub fn blade(dim: usize, indices: &[usize], coeff: ExactScalar) -> Result<Self> {
        let mut mv = Self::zero(dim, indices.len())?;
        let mut key = 0u64;
        let mut last = 0;
        for &i in indices {
            if i <= last || i > dim {
                return Err(Error::InvalidParameter(format!(
                    "blade indices must be strictly increasing within 1..={dim}: {indices:?}"
                )));
            }
            key |= 1 << (i - 1);
            last = i;
        }
        if !coeff.is_zero() {
            mv.coeffs.insert(key, coeff);
        }
        Ok(mv)
    }

    /// Grade-1 multivector from a vector.
    pub fn from_vector(v: &Vector) -> Result<Self> {
        let mut mv = Self::zero(v.dim(), 1)?;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                mv.coeffs.insert(1 << i, c.clone());
            }
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the blade with the given 1-based increasing indices.
    pub fn coeff(&self, indices: &[usize]) -> ExactScalar {
        let key = indices.iter().fold(0u64, |k, &i| k | (1 << (i - 1)));
        self.coeffs.get(&key).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Nonzero terms as (1-based index list, coefficient), in key order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &ExactScalar)> {
        self.coeffs.iter().map(|(&k, c)| {
            let idx = (0..64).filter(|b| k >> b & 1 == 1).map(|b| b + 1).collect();
            (idx, c)
        })
    }

    pub fn neg(&self) -> Self {
        Multivector {
            dim: self.dim,
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let grade = self.grade + other.grade;
        if grade > self.dim {
            return Err(Error::InvalidParameter(format!(
                "wedge of grades {} and {} exceeds dimension {}",
                self.grade, other.grade, self.dim
            )));
        }
        let mut out = Multivector::zero(self.dim, grade)?;
        for (&s, a) in &self.coeffs {
            for (&t, b) in &other.coeffs {
                if let Some(sign) = merge_sign(s, t) {
                    let term = a * b;
                    let entry = out.coeffs.entry(s | t).or_insert_with(ExactScalar::zero);
                    if sign > 0 {
                        *entry += term;
                    } else {
                        *entry -= term;
                    }
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// `v_1 ∧ … ∧ v_k` as a grade-k multivector (grade 0 scalar 1 when empty).
pub fn wedge_vectors(dim: usize, vectors: &[&Vector]) -> Result<Multivector> {
    let mut acc = Multivector::scalar_one(dim)?;
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        acc = acc.wedge(&Multivector::from_vector(v)?)?;
    }
    Ok(acc)
}

/// Coefficient of `e_1 ∧ … ∧ e_d` in `x ∧ U`, for `U` of grade `d - 1`.
pub fn top_pairing(x: &Vector, u: &Multivector) -> Result<ExactScalar> {
    if x.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: x.dim(),
        });
    }
    let d = u.dim();
    if u.grade() + 1 != d {
        return Err(Error::InvalidParameter(format!(
            "top pairing needs grade {}, got {}",
            d - 1,
            u.grade()
        )));
    }
    let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut acc = ExactScalar::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        if let Some(c) = u.coeffs.get(&(full & !(1 << i))) {
            // e_i must hop over the i lower indices
            if i % 2 == 0 {
                acc += xi * c;
            } else {
                acc -= xi * c;
            }
        }
    }
    Ok(acc)
}

/// The vector `u` with `u · x = det(x | v_1 | … | v_{d-1})` for every `x`.
///
/// Computed from the signed maximal minors of `[v_1 … v_{d-1}]`; it is zero
/// exactly when the `v_i` are linearly dependent.
pub fn wedge_to_vector(vectors: &[&Vector]) -> Result<Vector> {
    let d = vectors.len() + 1;
    if d < 2 {
        return Err(Error::InvalidParameter(
            "wedge_to_vector needs at least one vector (d >= 2)".into(),
        ));
    }
    for v in vectors {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.dim(),
            });
        }
    }
    let mut u = Vec::with_capacity(d);
    for skip in 0..d {
        let rows: Vec<Vec<ExactScalar>> = (0..d)
            .filter(|&r| r != skip)
            .map(|r| vectors.iter().map(|v| v[r].clone()).collect())
            .collect();
        let minor = Matrix::from_rows(rows)?.det()?;
        u.push(if skip % 2 == 0 { minor } else { -minor });
    }
    Ok(Vector::new(u))
}
