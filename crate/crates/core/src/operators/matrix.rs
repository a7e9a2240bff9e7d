//! Dense triangular matrices of the fractional operators.
//!
//! Left operators anchored at `a` act on the value vector of `f` over
//! `a+1 ..= a+m` and are lower triangular Toeplitz; right operators anchored
//! at `b` act on `b-m ..= b-1` and are the transposes. Entries are exactly the
//! kernel weights.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::numerics::{difference_weights, weights, FracOrder, Scalar};

fn lower_toeplitz<S: Scalar>(w: &[S], m: usize) -> DMatrix<S> {
    DMatrix::from_fn(m, m, |i, j| if i >= j { w[i - j].clone() } else { S::zero() })
}

/// `nabla_a^{-beta}` as an `m x m` lower triangular matrix.
pub fn left_sum_matrix<S: Scalar>(beta: &S, m: usize) -> Result<DMatrix<S>> {
    Ok(lower_toeplitz(&weights(beta, m.saturating_sub(1))?, m))
}

/// `_b nabla^{-beta}` as an `m x m` upper triangular matrix.
pub fn right_sum_matrix<S: Scalar>(beta: &S, m: usize) -> Result<DMatrix<S>> {
    Ok(left_sum_matrix(beta, m)?.transpose())
}

/// `nabla_a^{alpha}` (Riemann) as a lower triangular matrix with entries
/// `w_{i-j}(-alpha)`.
pub fn left_riemann_matrix<S: Scalar>(alpha: &FracOrder<S>, m: usize) -> DMatrix<S> {
    lower_toeplitz(&difference_weights(alpha.alpha(), m.saturating_sub(1)), m)
}

/// `_b nabla^{alpha}` (Riemann) as an upper triangular matrix.
pub fn right_riemann_matrix<S: Scalar>(alpha: &FracOrder<S>, m: usize) -> DMatrix<S> {
    left_riemann_matrix(alpha, m).transpose()
}

/// `y = A x` without requiring nalgebra's arithmetic traits on `S`.
pub fn mat_vec<S: Scalar>(m: &DMatrix<S>, x: &[S]) -> Vec<S> {
    assert_eq!(m.ncols(), x.len(), "dimension mismatch");
    (0..m.nrows())
        .map(|i| {
            let mut acc = S::zero();
            for (j, xj) in x.iter().enumerate() {
                let e = &m[(i, j)];
                if !e.is_zero() {
                    acc += e.clone() * xj.clone();
                }
            }
            acc
        })
        .collect()
}

/// Converts to `f64` for the Newton solver.
pub fn to_f64_matrix<S: Scalar>(m: &DMatrix<S>) -> DMatrix<f64> {
    m.map(|v| v.to_f64())
}
