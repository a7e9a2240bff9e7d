use crate::error::{Error, Result};

use super::Scalar;

/// Rising function `t^(alpha) = Gamma(t + alpha) / Gamma(t)`.
///
/// Nonnegative integer orders use the product `t (t+1) ... (t+m-1)` and are
/// valid for every `t`. `t = 0` gives `0` for any nonzero order and `t^(0)`
/// is `1`.
pub fn rising_factorial<S: Scalar>(t: &S, alpha: &S) -> Result<S> {
    if alpha.is_zero() {
        return Ok(S::one());
    }
    if let Some(m) = alpha.as_integer().filter(|m| *m > 0) {
        let mut acc = S::one();
        for k in 0..m {
            acc *= t.clone() + S::from_i64(k);
        }
        return Ok(acc);
    }
    if t.is_zero() {
        return Ok(S::zero());
    }
    let top = t.clone() + alpha.clone();
    if matches!(t.as_integer(), Some(k) if k < 0) {
        return Err(Error::Domain(format!("rising factorial base {t} is a Gamma pole")));
    }
    if matches!(top.as_integer(), Some(k) if k <= 0) {
        return Err(Error::Domain(format!("Gamma pole at t + alpha = {top}")));
    }
    S::gamma_ratio(&top, t)
}

/// Falling function `t^(alpha) = Gamma(t + 1) / Gamma(t + 1 - alpha)`.
pub fn falling_factorial<S: Scalar>(t: &S, alpha: &S) -> Result<S> {
    if alpha.is_zero() {
        return Ok(S::one());
    }
    if let Some(m) = alpha.as_integer().filter(|m| *m > 0) {
        let mut acc = S::one();
        for k in 0..m {
            acc *= t.clone() - S::from_i64(k);
        }
        return Ok(acc);
    }
    let top = t.clone() + S::one();
    let bottom = top.clone() - alpha.clone();
    for x in [&top, &bottom] {
        if matches!(x.as_integer(), Some(k) if k <= 0) {
            return Err(Error::Domain(format!("Gamma pole at {x}")));
        }
    }
    S::gamma_ratio(&top, &bottom)
}

/// `t^(alpha) / Gamma(alpha + 1)`, which stays rational for integer `t >= 0`
/// and rational `alpha`:
/// `prod_{j=1}^{t-1} (j + alpha) / (t - 1)!`, and `0` at `t = 0`.
///
/// Identities involving the rising function, such as
/// `nabla t^(alpha) = alpha t^(alpha - 1)`, become exact identities between
/// these normalised values.
pub fn rising_over_gamma<S: Scalar>(t: &S, alpha: &S) -> Result<S> {
    match t.as_integer() {
        Some(0) => Ok(S::zero()),
        Some(k) if k > 0 && S::from_i64(k) == *t => {
            let mut acc = S::one();
            for j in 1..k {
                acc = acc * (S::from_i64(j) + alpha.clone()) / S::from_i64(j);
            }
            Ok(acc)
        }
        _ => {
            let one_plus = alpha.clone() + S::one();
            if matches!(one_plus.as_integer(), Some(k) if k <= 0) {
                return Err(Error::Domain(format!("Gamma pole at alpha + 1 = {one_plus}")));
            }
            let rising = rising_factorial(t, alpha)?;
            Ok(rising / S::gamma_ratio(&one_plus, &S::one())?)
        }
    }
}

/// Kernel weights `w_k(beta) = Gamma(k + beta) / (Gamma(beta) k!)` for
/// `k = 0..=count`, from `w_0 = 1`, `w_k = w_{k-1} (k + beta - 1) / k`.
///
/// `w_k(beta)` is the coefficient of `f(t - k)` in the left sum of order
/// `beta`.
pub fn weights<S: Scalar>(beta: &S, count: usize) -> Result<Vec<S>> {
    if *beta <= S::zero() {
        return Err(Error::InvalidOrder(beta.to_text()));
    }
    Ok(kernel(beta, count))
}

/// `w_k(-alpha)`: the convolution weights of the Riemann difference of
/// order `alpha` (the backward difference `nabla^n` applied to the weights of
/// order `n - alpha`). Finite for integer `alpha`.
pub fn difference_weights<S: Scalar>(alpha: &S, count: usize) -> Vec<S> {
    kernel(&-alpha.clone(), count)
}

fn kernel<S: Scalar>(beta: &S, count: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(S::one());
    for k in 1..=count {
        let kk = S::from_i64(k as i64);
        let next = out[k - 1].clone() * (kk.clone() + beta.clone() - S::one()) / kk;
        out.push(next);
    }
    out
}

/// Delta fractional-sum kernel `x^(alpha - 1) / Gamma(alpha)` with the
/// falling function, evaluated at a real argument `x` on the lattice
/// `alpha - 1 + N_0`.
///
/// With `k = x + 1 - alpha` this is `x (x-1) ... (x-k+1) / k!`, computed in
/// the coordinates of `x` itself rather than through the recurrence.
pub fn delta_sum_kernel<S: Scalar>(x: &S, alpha: &S) -> Result<S> {
    let offset = x.clone() + S::one() - alpha.clone();
    let k = offset
        .as_integer()
        .filter(|k| *k >= 0)
        .ok_or_else(|| Error::Domain(format!("{x} is not on the lattice {alpha} - 1 + N_0")))?;
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * (x.clone() - S::from_i64(j)) / S::from_i64(j + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    /// `Gamma(k + beta) / (Gamma(beta) k!)` through `ln Gamma`, independent of
    /// the recurrence.
    fn log_gamma_weight(beta: f64, k: usize) -> f64 {
        use statrs::function::gamma::ln_gamma;
        (ln_gamma(k as f64 + beta) - ln_gamma(beta) - ln_gamma(k as f64 + 1.0)).exp()
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(&q(3, 1), &q(2, 1)).unwrap(), q(12, 1));
        assert_eq!(rising_factorial(&q(7, 3), &q(0, 1)).unwrap(), q(1, 1));
        assert_eq!(rising_factorial(&q(0, 1), &q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(rising_factorial(&0.0, &0.5).unwrap(), 0.0);
        let r = rising_factorial(&1.0, &0.5).unwrap();
        assert!((r - 0.886_226_925_452_758).abs() < 1e-10);
        assert!(rising_factorial(&-2.0, &0.5).is_err());
        assert!(rising_factorial(&0.5, &-1.5).is_err());
        // product form stays valid at poles
        assert_eq!(rising_factorial(&-2.0, &2.0).unwrap(), 2.0);
        assert!(matches!(
            rising_factorial(&q(1, 1), &q(1, 2)),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling_factorial(&q(4, 1), &q(2, 1)).unwrap(), q(12, 1));
        assert_eq!(falling_factorial(&2.5, &0.0).unwrap(), 1.0);
        let r = falling_factorial(&1.5, &0.5).unwrap();
        assert!((r - 1.329_340_388_179_137).abs() < 1e-10);
        assert!(falling_factorial(&-1.0, &0.5).is_err());
        assert!(falling_factorial(&0.5, &2.5).is_err());
    }

    #[test]
    fn weight_examples() {
        let w = weights(&q(1, 2), 2).unwrap();
        assert_eq!(w, vec![q(1, 1), q(1, 2), q(3, 8)]);
        assert!(weights(&q(1, 1), 6).unwrap().iter().all(|x| *x == q(1, 1)));
        assert_eq!(weights(&q(7, 5), 0).unwrap(), vec![q(1, 1)]);
        assert!(weights(&q(0, 1), 3).is_err());
    }

    #[test]
    fn weights_match_log_gamma_oracle() {
        for beta in [0.125, 0.5, 0.75, 1.25, 1.875, 3.5] {
            let w = weights(&beta, 40).unwrap();
            for (k, wk) in w.iter().enumerate() {
                let o = log_gamma_weight(beta, k);
                assert!((wk - o).abs() <= 1e-12 * o.abs().max(1.0), "beta={beta} k={k}");
            }
        }
    }

    #[test]
    fn difference_weights_of_integer_order_are_binomial() {
        let w = difference_weights(&q(2, 1), 4);
        assert_eq!(w, vec![q(1, 1), q(-2, 1), q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn delta_kernel_matches_weights() {
        let alpha = q(2, 3);
        let w = weights(&alpha, 8).unwrap();
        for (k, wk) in w.iter().enumerate() {
            let x = alpha.clone() - q(1, 1) + q(k as i64, 1);
            assert_eq!(delta_sum_kernel(&x, &alpha).unwrap(), *wk);
        }
        assert!(delta_sum_kernel(&q(1, 2), &alpha).is_err());
    }

    #[test]
    fn rising_over_gamma_float_agrees_with_integer_path() {
        for t in 1..8 {
            let a = rising_over_gamma(&(t as f64), &0.3).unwrap();
            let b = rising_factorial(&(t as f64), &0.3).unwrap()
                / statrs::function::gamma::gamma(1.3);
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }
}
