#![allow(dead_code)]

use proptest::prelude::*;
use unilines_core::lines::OrientedLine;
use unilines_core::{ExactScalar, Matrix, Vector};

pub fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

pub fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_scalar() -> impl Strategy<Value = ExactScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn positive_scalar() -> impl Strategy<Value = ExactScalar> {
    (1i64..=9, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn vector(d: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(scalar(), d).prop_map(Vector::new)
}

pub fn nonzero_vector(d: usize) -> impl Strategy<Value = Vector> {
    vector(d).prop_filter("nonzero", |v| !v.is_zero())
}

pub fn square(n: usize) -> impl Strategy<Value = Vec<Vec<ExactScalar>>> {
    prop::collection::vec(prop::collection::vec(scalar(), n), n)
}

pub fn line(d: usize) -> impl Strategy<Value = OrientedLine> {
    (vector(d), nonzero_vector(d)).prop_map(|(a, v)| OrientedLine::new(a, v).unwrap())
}

/// Strictly increasing positive rationals.
pub fn increasing(len: usize) -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::collection::vec((1i64..=7, 1i64..=5), len).prop_map(|steps| {
        let mut acc = ExactScalar::zero();
        steps
            .into_iter()
            .map(|(n, d)| {
                acc = &acc + &q(n, d);
                acc.clone()
            })
            .collect()
    })
}

/// Laplace expansion along the first row.
pub fn laplace(rows: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = rows.len();
    if n == 0 {
        return ExactScalar::one();
    }
    let mut acc = ExactScalar::zero();
    for c in 0..n {
        let minor: Vec<Vec<ExactScalar>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &rows[0][c] * &laplace(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn det_of_columns(cols: &[&Vector]) -> ExactScalar {
    Matrix::from_columns(cols).unwrap().det().unwrap()
}

pub fn apply(m: &Matrix, v: &Vector) -> Vector {
    m.mul_vector(v).unwrap()
}
