use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactScalar;
use crate::error::{Error, Result};

/// A coordinate vector over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<ExactScalar>);

impl Vector {
    pub fn new(coords: Vec<ExactScalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![ExactScalar::zero(); dim])
    }

    /// Standard basis vector `e_i` (1-based `i`).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "basis index out of range");
        let mut v = Self::zeros(dim);
        v.0[i - 1] = ExactScalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| ExactScalar::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<ExactScalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ExactScalar::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Result<ExactScalar> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn scale(&self, k: &ExactScalar) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }

    pub fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    /// The positive rational multiple of `self` with coprime integer coordinates.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints
            .iter()
            .filter(|n| !n.is_zero())
            .fold(BigInt::zero(), |acc, n| acc.gcd(n))
            .abs();
        Vector(
            ints.into_iter()
                .map(|n| ExactScalar::from_integer(n / &gcd))
                .collect(),
        )
    }
}

impl Index<usize> for Vector {
    type Output = ExactScalar;
    fn index(&self, i: usize) -> &ExactScalar {
        &self.0[i]
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &'a Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &'a Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl FromIterator<ExactScalar> for Vector {
    fn from_iter<I: IntoIterator<Item = ExactScalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_keeps_direction() {
        let v = Vector::new(vec![
            ExactScalar::ratio(-2, 3),
            ExactScalar::ratio(4, 9),
            ExactScalar::zero(),
        ]);
        assert_eq!(v.primitive(), Vector::from_ints(&[-3, 2, 0]));
        assert_eq!(Vector::zeros(3).primitive(), Vector::zeros(3));
    }

    #[test]
    fn dot_checks_dimension() {
        let a = Vector::from_ints(&[1, 2]);
        let b = Vector::from_ints(&[1, 2, 3]);
        assert!(matches!(a.dot(&b), Err(Error::DimensionMismatch { .. })));
        assert_eq!(a.dot(&a).unwrap(), ExactScalar::from(5));
    }
}
