use crate::error::{Error, Result};
use crate::grid::GridFn;

use super::Scalar;

fn binomial_row<S: Scalar>(n: usize) -> Vec<S> {
    let mut row = vec![S::one()];
    for k in 1..=n {
        let next = row[k - 1].clone() * S::from_i64((n - k + 1) as i64) / S::from_i64(k as i64);
        row.push(next);
    }
    row
}

fn check_len<S: Scalar>(f: &GridFn<S>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("difference order must be positive".into()));
    }
    if f.len() < n + 1 {
        return Err(Error::Domain(format!(
            "{n}-fold difference needs {} points, function has {}",
            n + 1,
            f.len()
        )));
    }
    Ok(())
}

/// `nabla^n f(t) = sum_j (-1)^j C(n, j) f(t - j)` on `[lo + n, hi]`.
pub fn nabla_n<S: Scalar>(f: &GridFn<S>, n: usize) -> Result<GridFn<S>> {
    check_len(f, n)?;
    let c = binomial_row::<S>(n);
    let v = f.values();
    let base = f.lo();
    Ok(GridFn::from_fn(f.origin().clone(), f.lo() + n as i64, f.hi(), |t| {
        let i = (t - base) as usize;
        let mut acc = S::zero();
        for (j, cj) in c.iter().enumerate() {
            let term = cj.clone() * v[i - j].clone();
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }))
}

/// `(-1)^n Delta^n f(t) = sum_j (-1)^j C(n, j) f(t + j)` on `[lo, hi - n]`.
pub fn minus_delta_n<S: Scalar>(f: &GridFn<S>, n: usize) -> Result<GridFn<S>> {
    check_len(f, n)?;
    let c = binomial_row::<S>(n);
    let v = f.values();
    let base = f.lo();
    Ok(GridFn::from_fn(f.origin().clone(), f.lo(), f.hi() - n as i64, |t| {
        let i = (t - base) as usize;
        let mut acc = S::zero();
        for (j, cj) in c.iter().enumerate() {
            let term = cj.clone() * v[i + j].clone();
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rising_factorial, rising_over_gamma, Rational};

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn integer_difference_examples() {
        let c = GridFn::constant(q(0, 1), 0, 5, q(7, 1));
        assert!(nabla_n(&c, 1).unwrap().values().iter().all(|v| *v == q(0, 1)));
        assert!(minus_delta_n(&c, 1).unwrap().values().iter().all(|v| *v == q(0, 1)));

        let id = GridFn::from_fn(q(0, 1), 0, 5, |t| q(t, 1));
        let d = nabla_n(&id, 1).unwrap();
        assert_eq!((d.lo(), d.hi()), (1, 5));
        assert!(d.values().iter().all(|v| *v == q(1, 1)));
        let m = minus_delta_n(&id, 1).unwrap();
        assert_eq!((m.lo(), m.hi()), (0, 4));
        assert!(m.values().iter().all(|v| *v == q(-1, 1)));

        // (-1)^2 Delta^2 keeps its sign
        let sq = GridFn::from_fn(q(0, 1), 0, 5, |t| q(t * t, 1));
        assert!(minus_delta_n(&sq, 2).unwrap().values().iter().all(|v| *v == q(2, 1)));

        assert!(nabla_n(&GridFn::constant(q(0, 1), 0, 1, q(1, 1)), 2).is_err());
        assert!(minus_delta_n(&GridFn::constant(q(0, 1), 0, 1, q(1, 1)), 0).is_err());
    }

    #[test]
    fn minus_delta_is_negated_forward_difference() {
        let f = GridFn::from_fn(0.0, 0, 9, |t| (t as f64 * 0.7).sin());
        let m = minus_delta_n(&f, 1).unwrap();
        for (t, v) in m.points() {
            let fwd = f.get(t + 1).unwrap() - f.get(t).unwrap();
            assert_eq!(*v, -fwd);
        }
    }

    #[test]
    fn nabla_of_rising_power_exact() {
        for (p, d) in [(1, 2), (1, 3), (5, 4), (7, 3)] {
            let alpha = q(p, d);
            let f = GridFn::from_fn(q(0, 1), 1, 12, |t| rising_over_gamma(&q(t, 1), &alpha).unwrap());
            let lhs = nabla_n(&f, 1).unwrap();
            let lower = alpha.clone() - q(1, 1);
            for (t, v) in lhs.points() {
                assert_eq!(*v, rising_over_gamma(&q(t, 1), &lower).unwrap(), "alpha={alpha} t={t}");
            }
        }
    }

    #[test]
    fn nabla_of_rising_power_float() {
        for alpha in [0.25, 0.5, 1.5, 2.75] {
            let f = GridFn::from_fn(0.0, 1, 20, |t| rising_factorial(&(t as f64), &alpha).unwrap());
            for (t, v) in nabla_n(&f, 1).unwrap().points() {
                let rhs = alpha * rising_factorial(&(t as f64), &(alpha - 1.0)).unwrap();
                assert!((v - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "alpha={alpha} t={t} err={}", (v - rhs).abs() / rhs.abs());
            }
        }
    }
}
