use crate::error::{Error, Result};
use crate::grid::GridFn;
use crate::numerics::{minus_delta_n, nabla_n, weights, FracOrder, Scalar};

/// Left sum of real order `beta` at `t`: `sum_{k=0}^{t-a-1} w_k(beta) f(t-k)`.
pub(crate) fn left_sum_at<S: Scalar>(f: &GridFn<S>, beta: &S, a: i64, t: i64) -> Result<S> {
    if t < a {
        return Err(Error::Domain(format!("left sum evaluated at t = {t} before its anchor a = {a}")));
    }
    if t == a {
        return Ok(S::zero());
    }
    f.require(a + 1, t)?;
    let w = weights(beta, (t - a - 1) as usize)?;
    let mut acc = S::zero();
    for (k, wk) in w.iter().enumerate() {
        acc += wk.clone() * f.get(t - k as i64)?.clone();
    }
    Ok(acc)
}

/// Left sum of order `beta` on `[from, hi]`, zero at and before the anchor.
pub(crate) fn left_sum_fn<S: Scalar>(f: &GridFn<S>, beta: &S, a: i64, from: i64, hi: i64) -> Result<GridFn<S>> {
    if hi > a {
        f.require(a + 1, hi)?;
    }
    let w = weights(beta, (hi - a).max(0) as usize)?;
    Ok(GridFn::from_fn(f.origin().clone(), from, hi, |t| {
        let mut acc = S::zero();
        for s in (a + 1)..=t {
            acc += w[(t - s) as usize].clone() * f.get(s).expect("checked above").clone();
        }
        acc
    }))
}

/// Right sum of order `beta` at `t`: `sum_{s=t}^{b-1} w_{s-t}(beta) f(s)`.
pub(crate) fn right_sum_at<S: Scalar>(f: &GridFn<S>, beta: &S, b: i64, t: i64) -> Result<S> {
    if t > b {
        return Err(Error::Domain(format!("right sum evaluated at t = {t} after its anchor b = {b}")));
    }
    if t == b {
        return Ok(S::zero());
    }
    f.require(t, b - 1)?;
    let w = weights(beta, (b - 1 - t) as usize)?;
    let mut acc = S::zero();
    for (k, wk) in w.iter().enumerate() {
        acc += wk.clone() * f.get(t + k as i64)?.clone();
    }
    Ok(acc)
}

/// Right sum of order `beta` on `[lo, to]`, zero at and after the anchor.
pub(crate) fn right_sum_fn<S: Scalar>(f: &GridFn<S>, beta: &S, b: i64, lo: i64, to: i64) -> Result<GridFn<S>> {
    if lo < b {
        f.require(lo, b - 1)?;
    }
    let w = weights(beta, (b - lo).max(0) as usize)?;
    Ok(GridFn::from_fn(f.origin().clone(), lo, to, |t| {
        let mut acc = S::zero();
        for s in t..b {
            acc += w[(s - t) as usize].clone() * f.get(s).expect("checked above").clone();
        }
        acc
    }))
}

/// `nabla_a^{-alpha} f(t)`; `0` at `t = a`.
pub fn nabla_left_sum<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, a: i64, t: i64) -> Result<S> {
    left_sum_at(f, alpha.alpha(), a, t)
}

/// `nabla_a^{-alpha} f` on `[a + 1, f.hi()]`.
pub fn nabla_left_sum_fn<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, a: i64) -> Result<GridFn<S>> {
    left_sum_fn(f, alpha.alpha(), a, a + 1, f.hi())
}

/// `_b nabla^{-alpha} f(t)`; `0` at `t = b`.
pub fn nabla_right_sum<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64, t: i64) -> Result<S> {
    right_sum_at(f, alpha.alpha(), b, t)
}

/// `_b nabla^{-alpha} f` on `[f.lo(), b - 1]`.
pub fn nabla_right_sum_fn<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    right_sum_fn(f, alpha.alpha(), b, f.lo(), b - 1)
}

/// Left Riemann difference `nabla^n nabla_a^{-(n-alpha)} f` on
/// `[a + 1, f.hi()]`.
///
/// The inner sum is taken as `0` at `a` and before it, which is what the
/// outer `nabla^n` reads near the left edge when `n > 1`.
pub fn nabla_left_riemann<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, a: i64) -> Result<GridFn<S>> {
    let n = alpha.n() as i64;
    let hi = f.hi();
    if hi < a + 1 {
        return Err(Error::Domain(format!("left Riemann difference needs f on [{}, ..]", a + 1)));
    }
    let inner = left_sum_fn(f, &alpha.complement(), a, a + 1 - n, hi)?;
    nabla_n(&inner, alpha.n())
}

/// Right Riemann difference `(-1)^n Delta^n _b nabla^{-(n-alpha)} f` on
/// `[f.lo(), b - 1]`, with the inner sum `0` at `b` and after it.
pub fn nabla_right_riemann<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    let n = alpha.n() as i64;
    let lo = f.lo();
    if lo > b - 1 {
        return Err(Error::Domain(format!("right Riemann difference needs f on [.., {}]", b - 1)));
    }
    let inner = right_sum_fn(f, &alpha.complement(), b, lo, b - 1 + n)?;
    minus_delta_n(&inner, alpha.n())
}

/// Left Caputo difference `nabla_{a+n-1}^{-(n-alpha)} nabla^n f` on
/// `[a + n, f.hi()]`. Needs `f` on `[a, ..]`.
pub fn caputo_left<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, a: i64) -> Result<GridFn<S>> {
    alpha.require_non_integer()?;
    let n = alpha.n() as i64;
    let hi = f.hi();
    if hi < a + n {
        return Err(Error::Domain(format!("left Caputo difference needs f on [{a}, {}]", a + n)));
    }
    let d = nabla_n(&f.restrict(a, hi)?, alpha.n())?;
    left_sum_fn(&d, &alpha.complement(), a + n - 1, a + n, hi)
}

/// Right Caputo difference `_{b-n+1} nabla^{-(n-alpha)} (-1)^n Delta^n f` on
/// `[f.lo(), b - n]`. Needs `f` on `[.., b]`.
pub fn caputo_right<S: Scalar>(f: &GridFn<S>, alpha: &FracOrder<S>, b: i64) -> Result<GridFn<S>> {
    alpha.require_non_integer()?;
    let n = alpha.n() as i64;
    let lo = f.lo();
    if lo > b - n {
        return Err(Error::Domain(format!("right Caputo difference needs f on [{}, {b}]", b - n)));
    }
    let d = minus_delta_n(&f.restrict(lo, b)?, alpha.n())?;
    right_sum_fn(&d, &alpha.complement(), b - n + 1, lo, b - n)
}
