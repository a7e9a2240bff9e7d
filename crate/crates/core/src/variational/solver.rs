use nalgebra::{DMatrix, DVector};

use super::{el_residual, gradient_oracle, linear_maps, stationarity_residual, LinearMaps, VariationalProblem};
use crate::error::{Error, Result};
use crate::grid::GridFn;
use crate::numerics::Scalar;

#[derive(Debug, Clone)]
pub struct Solution<S> {
    pub f: GridFn<S>,
    pub el_residual: GridFn<S>,
    /// Max-norm of the gradient oracle on the free coordinates; projected
    /// onto the constraint's tangent space for a fixed fractional sum.
    pub gradient_norm: S,
    pub iterations: usize,
    pub converged: bool,
    /// Lagrange multiplier of the fixed-fractional-sum terminal condition.
    pub multiplier: Option<S>,
}

impl<S: Scalar> Solution<S> {
    pub fn max_el_residual(&self) -> S {
        self.el_residual.max_abs()
    }
}

fn max_norm(v: &DVector<f64>) -> f64 {
    v.amax()
}

struct Newton<'a> {
    problem: &'a VariationalProblem<f64>,
    maps: LinearMaps<f64>,
    p: DMatrix<f64>,
    d: DMatrix<f64>,
    constraint: Option<(DVector<f64>, f64)>,
}

impl Newton<'_> {
    fn unknowns(&self) -> usize {
        self.maps.free.len()
    }

    fn split<'z>(&self, z: &'z DVector<f64>) -> (&'z [f64], Option<f64>) {
        let n = self.unknowns();
        (&z.as_slice()[..n], self.constraint.as_ref().map(|_| z[n]))
    }

    /// Gradient of `J` (through the Euler–Lagrange assembly), plus the
    /// multiplier terms and the constraint equation when present.
    fn residual(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        let (x, lambda) = self.split(z);
        let f = self.problem.assemble(x);
        let grad = stationarity_residual(self.problem, &f)?;
        let mut out = DVector::from_column_slice(grad.values());
        if let (Some((k, target)), Some(lambda)) = (&self.constraint, lambda) {
            out += k * lambda;
            let c = k.dot(&DVector::from_column_slice(x)) - target;
            out = out.push(c);
        }
        Ok(out)
    }

    fn jacobian(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let (x, _) = self.split(z);
        let x = DVector::from_column_slice(x);
        let u = &self.p * &x + DVector::from_column_slice(&self.maps.p0);
        let v = &self.d * &x + DVector::from_column_slice(&self.maps.d0);
        let l = self.problem.lagrangian();
        let t0 = self.problem.grid().a_index() + 1;
        let m = u.len();
        let diag = |g: &dyn Fn(i64, &f64, &f64) -> f64| {
            DMatrix::from_diagonal(&DVector::from_fn(m, |i, _| g(t0 + i as i64, &u[i], &v[i])))
        };
        let luu = diag(&|t, a, b| l.d_uu(t, a, b));
        let luv = diag(&|t, a, b| l.d_uv(t, a, b));
        let lvv = diag(&|t, a, b| l.d_vv(t, a, b));
        let (pt, dt) = (self.p.transpose(), self.d.transpose());
        let h = &pt * &luu * &self.p + &pt * &luv * &self.d + &dt * &luv * &self.p + &dt * &lvv * &self.d;
        match &self.constraint {
            None => h,
            Some((k, _)) => {
                let n = self.unknowns();
                let mut j = DMatrix::zeros(n + 1, n + 1);
                j.view_mut((0, 0), (n, n)).copy_from(&h);
                j.view_mut((0, n), (n, 1)).copy_from(k);
                j.view_mut((n, 0), (1, n)).copy_from(&k.transpose());
                j
            }
        }
    }
}

/// Damped Newton on the stationarity equations of `p` (float backend).
///
/// The unknowns are the free coordinates (and a multiplier for the fixed
/// fractional-sum terminal condition). Without `initial`, iteration starts
/// from the solution of the problem linearised at `f = 0`. Each step is
/// halved up to 30 times until the residual's Euclidean norm decreases;
/// convergence is judged on its max-norm.
/// Non-convergence is reported through [`Solution::converged`]; a singular
/// Jacobian is an error.
pub fn solve(p: &VariationalProblem<f64>, initial: Option<&GridFn<f64>>, tol: f64, max_iter: usize) -> Result<Solution<f64>> {
    let maps = linear_maps(p);
    let constraint = p.constraint().map(|(k, target)| (DVector::from_vec(k), target));
    let newton = Newton { problem: p, p: maps.p.clone(), d: maps.d.clone(), maps, constraint };
    let n = newton.unknowns() + usize::from(newton.constraint.is_some());

    let mut z = match initial {
        Some(f) => {
            let mut z = DVector::zeros(n);
            for (i, t) in newton.maps.free.iter().enumerate() {
                z[i] = *f.get(*t)?;
            }
            z
        }
        None => {
            let zero = DVector::zeros(n);
            let r = newton.residual(&zero)?;
            newton.jacobian(&zero).lu().solve(&(-r)).unwrap_or(zero)
        }
    };

    let mut r = newton.residual(&z)?;
    let mut iterations = 0;
    while max_norm(&r) > tol && iterations < max_iter {
        let step = newton.jacobian(&z).lu().solve(&(-&r)).ok_or(Error::SingularJacobian(iterations))?;
        iterations += 1;
        let mut scale = 1.0;
        let mut trial = &z + &step;
        let mut trial_r = newton.residual(&trial)?;
        for _ in 0..30 {
            if trial_r.norm() < r.norm() {
                break;
            }
            scale *= 0.5;
            trial = &z + &step * scale;
            trial_r = newton.residual(&trial)?;
        }
        z = trial;
        r = trial_r;
    }

    let (x, lambda) = newton.split(&z);
    let f = p.assemble(x);
    let el = el_residual(p, &f)?;
    let grad = DVector::from_column_slice(gradient_oracle(p, &f)?.values());
    let gradient_norm = match &newton.constraint {
        None => max_norm(&grad),
        Some((k, _)) => max_norm(&(&grad - k * (k.dot(&grad) / k.dot(k)))),
    };
    Ok(Solution {
        f,
        el_residual: el,
        gradient_norm,
        iterations,
        converged: max_norm(&r) <= tol,
        multiplier: lambda,
    })
}
