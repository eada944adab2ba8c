use super::{ExactScalar, Matrix, Vector};
use crate::error::{Error, Result};

/// Affine dependence of `d + 2` points in general position in `Q^d`.
///
/// Returns `λ` with `Σ λ_i = 0` and `Σ λ_i p_i = 0`, scaled so that `λ_1 = 1`.
/// Each `λ_i` is, up to a common factor, the signed orientation determinant
/// of the other `d + 1` points, so a zero coordinate means those points are
/// affinely dependent; that is reported as [`Error::Degenerate`].
pub fn affine_dependence(points: &[Vector]) -> Result<Vector> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "affine dependence needs d + 2 >= 3 points, got {n}"
        )));
    }
    let d = n - 2;
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let mut lambda = Vec::with_capacity(n);
    for skip in 0..n {
        let mut rows: Vec<Vec<ExactScalar>> = (0..d)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != skip)
                    .map(|c| points[c][r].clone())
                    .collect()
            })
            .collect();
        rows.push(vec![ExactScalar::one(); n - 1]);
        let minor = Matrix::from_rows(rows)?.det()?;
        if minor.is_zero() {
            let others: Vec<usize> = (1..=n).filter(|&i| i != skip + 1).collect();
            return Err(Error::Degenerate(format!(
                "points {others:?} are affinely dependent"
            )));
        }
        lambda.push(if skip % 2 == 0 { minor } else { -minor });
    }
    let first = lambda[0].clone();
    Ok(lambda.into_iter().map(|l| l / first.clone()).collect())
}
