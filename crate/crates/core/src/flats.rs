//! Types of `r`-tuples of oriented `k`-flats in `R^d` with `d = rk + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{top_pairing, wedge_vectors, ExactScalar, Matrix, Multivector, Vector};
use crate::lines::{format_perm, rank_order};
use crate::par;
use crate::points::{common_value, reindex};

/// An oriented k-flat `a + lin(B)`, oriented by the order of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flat {
    pub a: Vector,
    #[serde(rename = "B")]
    pub basis: Vec<Vector>,
}

impl Flat {
    pub fn new(a: Vector, basis: Vec<Vector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidParameter("a flat needs k >= 1".into()));
        }
        for b in &basis {
            a.check_dim(b)?;
        }
        let flat = Flat { a, basis };
        if flat.u()?.is_zero() {
            return Err(Error::Degenerate("flat basis is linearly dependent".into()));
        }
        Ok(flat)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn u(&self) -> Result<Multivector> {
        u_of_basis(self.dim(), &self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlatTupleType {
    pub r: usize,
    pub pi: Vec<usize>,
}

impl fmt::Display for FlatTupleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_perm(&self.pi))
    }
}

/// `v_1 ∧ … ∧ v_k`.
pub fn u_of_basis(dim: usize, basis: &[Vector]) -> Result<Multivector> {
    let refs: Vec<&Vector> = basis.iter().collect();
    wedge_vectors(dim, &refs)
}

fn check_tuple(flats: &[&Flat]) -> Result<(usize, usize)> {
    let first = flats
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty flat tuple".into()))?;
    let (d, k) = (first.dim(), first.k());
    for f in flats {
        if f.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: f.dim(),
            });
        }
        if f.k() != k {
            return Err(Error::InvalidParameter(format!(
                "mixed flat dimensions {k} and {}",
                f.k()
            )));
        }
    }
    if d != flats.len() * k + 1 {
        return Err(Error::InvalidParameter(format!(
            "need d = rk + 1, got d = {d}, r = {}, k = {k}",
            flats.len()
        )));
    }
    Ok((d, k))
}

/// `h_i = a_i ∧ u(B_1) ∧ … ∧ u(B_r)` through the exterior algebra.
pub fn heights(flats: &[&Flat]) -> Result<(Multivector, Vec<ExactScalar>)> {
    let (d, _) = check_tuple(flats)?;
    let mut u = Multivector::scalar_one(d)?;
    for f in flats {
        u = u.wedge(&f.u()?)?;
    }
    let h = flats
        .iter()
        .map(|f| top_pairing(&f.a, &u))
        .collect::<Result<Vec<_>>>()?;
    Ok((u, h))
}

/// `h_i = det(a_i | B_1 | … | B_r)` as a plain determinant.
pub fn direct_heights(flats: &[&Flat]) -> Result<Vec<ExactScalar>> {
    check_tuple(flats)?;
    let dirs: Vec<&Vector> = flats.iter().flat_map(|f| f.basis.iter()).collect();
    flats
        .iter()
        .map(|f| {
            let mut cols = vec![&f.a];
            cols.extend(dirs.iter().copied());
            Matrix::from_columns(&cols)?.det()
        })
        .collect()
}

pub fn flats_tuple_type(flats: &[&Flat]) -> Result<FlatTupleType> {
    let (u, h) = heights(flats)?;
    debug_assert_eq!(h, direct_heights(flats)?, "exterior algebra disagrees with det");
    let r = flats.len();
    let fail = |reason: &str| Error::GeneralPosition {
        indices: (1..=r).collect(),
        reason: reason.into(),
    };
    if u.is_zero() {
        return Err(fail("flat directions are linearly dependent"));
    }
    let pi = rank_order(&h).ok_or_else(|| fail("two heights coincide"))?;
    Ok(FlatTupleType { r, pi })
}

/// The common type of all `r`-subsequences, where `d = rk + 1`.
pub fn flats_sequence_type(flats: &[Flat]) -> Result<Option<FlatTupleType>> {
    flats_sequence_type_par(flats, 1)
}

pub fn flats_sequence_type_par(flats: &[Flat], jobs: usize) -> Result<Option<FlatTupleType>> {
    let first = flats
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty flat sequence".into()))?;
    let (d, k) = (first.dim(), first.k());
    if (d - 1) % k != 0 {
        return Err(Error::InvalidParameter(format!(
            "need d = rk + 1, got d = {d}, k = {k}"
        )));
    }
    let r = (d - 1) / k;
    if flats.len() < r {
        return Err(Error::InvalidParameter(format!(
            "need at least {r} flats, got {}",
            flats.len()
        )));
    }
    common_value(par::map_tuples(flats.len(), r, jobs, |t| {
        let tuple: Vec<&Flat> = t.iter().map(|&i| &flats[i]).collect();
        flats_tuple_type(&tuple).map_err(|e| reindex(e, t))
    }))
}
