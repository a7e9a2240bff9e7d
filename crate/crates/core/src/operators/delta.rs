//! Delta fractional sums and Riemann differences on the shifted lattices
//! `a + alpha + Z` and `b - alpha + Z`.
//!
//! Results keep the integer offsets of the input and move the origin by
//! `±alpha`: offset `s` of `delta_left_sum(f, alpha, a)` is the point
//! `s + alpha`. Kernels are evaluated from the real coordinates with the
//! falling function, independently of the nabla recurrence, except for the
//! right-hand Riemann difference whose definition is the dual identity.

use crate::error::Result;
use crate::grid::GridFn;
use crate::numerics::{delta_sum_kernel, FracOrder, Scalar};

use super::nabla::{nabla_right_riemann, nabla_right_sum_fn};

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Falling-function kernel values `K[k] = (beta - 1 + k)^(beta - 1) / Gamma(beta)`
/// for `k = 0..=count`, each evaluated at its real argument.
fn kernel_table<S: Scalar>(beta: &S, count: usize) -> Result<Vec<S>> {
    (0..=count as i64)
        .map(|k| delta_sum_kernel(&(beta.clone() - S::one() + S::from_i64(k)), beta))
        .collect()
}

fn lattice_offset<S: Scalar>(from: &S, to: &S) -> Result<i64> {
    (to.clone() - from.clone())
        .as_integer()
        .ok_or_else(|| crate::Error::Domain(format!("{to} is not on the lattice {from} + Z")))
}

/// `(Delta_c^{-beta} f)(x)` with `c` the offset of the first summed point.
/// Zero below the first point `c + beta` of its lattice.
fn delta_left_sum_at<S: Scalar>(f: &GridFn<S>, kernels: &[S], beta: &S, c: i64, x: &S) -> Result<S> {
    let m = lattice_offset(&(f.point(c) + beta.clone()), x)?;
    let mut acc = S::zero();
    for s in c..=c + m {
        // x - point(s) - 1 = beta - 1 + (c + m - s)
        acc += kernels[(c + m - s) as usize].clone() * f.get(s)?.clone();
    }
    Ok(acc)
}

/// `(_c Delta^{-beta} f)(x)` with `c` the offset of the last summed point.
/// Zero above the last point `c - beta` of its lattice.
fn delta_right_sum_at<S: Scalar>(f: &GridFn<S>, kernels: &[S], beta: &S, c: i64, x: &S) -> Result<S> {
    let m = lattice_offset(x, &(f.point(c) - beta.clone()))?;
    let mut acc = S::zero();
    for s in (c - m)..=c {
        acc += kernels[(s - c + m) as usize].clone() * f.get(s)?.clone();
    }
    Ok(acc)
}

/// `s + alpha -> (Delta_{a+1}^{-alpha} f)(s + alpha)` for `s` in
/// `[a + 1, f.hi()]`, by direct summation of the falling-function kernel.
pub fn delta_left_sum<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, a: i64) -> Result<GridFn<S>> {
    f.require(a + 1, f.hi())?;
    let origin = f.origin().clone() + alpha.alpha().clone();
    let kernels = kernel_table(alpha.alpha(), f.len())?;
    let values = ((a + 1)..=f.hi())
        .map(|s| delta_left_sum_at(f, &kernels, alpha.alpha(), a + 1, &(f.point(s) + alpha.alpha().clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridFn::new(origin, a + 1, values))
}

/// `s - alpha -> (_{b-1} Delta^{-alpha} g)(s - alpha)` for `s` in
/// `[g.lo(), b - 1]`, defined through the dual identity with
/// `_b nabla^{-alpha} g(s)`.
pub fn delta_right_sum<S: Scalar>(g: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    let nabla = nabla_right_sum_fn(g, alpha, b)?;
    Ok(nabla.with_origin(g.origin().clone() - alpha.alpha().clone()))
}

/// Same values as [`delta_right_sum`], by direct falling-function summation.
pub fn delta_right_sum_direct<S: Scalar>(g: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    g.require(g.lo(), b - 1)?;
    let origin = g.origin().clone() - alpha.alpha().clone();
    let kernels = kernel_table(alpha.alpha(), g.len())?;
    let values = (g.lo()..b)
        .map(|s| delta_right_sum_at(g, &kernels, alpha.alpha(), b - 1, &(g.point(s) - alpha.alpha().clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridFn::new(origin, g.lo(), values))
}

/// `s - alpha -> (Delta_{a+1}^{alpha} g)(s - alpha)` for `s` in
/// `[a + 1, g.hi()]`: `Delta^n` of the delta left sum of order `n - alpha`,
/// with that sum taken as zero below its first lattice point.
pub fn delta_left_riemann<S: Scalar>(g: &GridFn<S>, alpha: &FracOrder<S>, a: i64) -> Result<GridFn<S>> {
    alpha.require_non_integer()?;
    g.require(a + 1, g.hi())?;
    let n = alpha.n();
    let beta = alpha.complement();
    let origin = g.origin().clone() - alpha.alpha().clone();
    let kernels = kernel_table(&beta, g.len())?;
    let values = ((a + 1)..=g.hi())
        .map(|s| {
            let x = g.point(s) - alpha.alpha().clone();
            let mut acc = S::zero();
            for j in 0..=n {
                let term = S::from_i64(binomial(n, j)) * delta_left_sum_at(g, &kernels, &beta, a + 1, &(x.clone() + S::from_i64(j as i64)))?;
                if (n - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridFn::new(origin, a + 1, values))
}

/// `s + alpha -> (_{b-1} Delta^{alpha} f)(s + alpha)` for `s` in
/// `[f.lo(), b - 1]`, defined through the dual identity with
/// `_b nabla^{alpha} f(s)`.
pub fn delta_right_riemann<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    alpha.require_non_integer()?;
    let nabla = nabla_right_riemann(f, alpha, b)?;
    Ok(nabla.with_origin(f.origin().clone() + alpha.alpha().clone()))
}

/// Same values as [`delta_right_riemann`], computed directly as
/// `(-nabla)^n` of the delta right sum of order `n - alpha`.
pub fn delta_right_riemann_direct<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    alpha.require_non_integer()?;
    f.require(f.lo(), b - 1)?;
    let n = alpha.n();
    let beta = alpha.complement();
    let origin = f.origin().clone() + alpha.alpha().clone();
    let kernels = kernel_table(&beta, f.len())?;
    let values = (f.lo()..b)
        .map(|s| {
            let x = f.point(s) + alpha.alpha().clone();
            let mut acc = S::zero();
            for j in 0..=n {
                let term = S::from_i64(binomial(n, j)) * delta_right_sum_at(f, &kernels, &beta, b - 1, &(x.clone() - S::from_i64(j as i64)))?;
                if (n + j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridFn::new(origin, f.lo(), values))
}
