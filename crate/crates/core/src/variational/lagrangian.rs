use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{Backend, Scalar};

/// `L(t, u, v)` with its first and second partials. `L_1 = dL/du`,
/// `L_2 = dL/dv`.
pub trait Lagrangian<S>: Send + Sync {
    fn eval(&self, t: i64, u: &S, v: &S) -> S;
    fn d_u(&self, t: i64, u: &S, v: &S) -> S;
    fn d_v(&self, t: i64, u: &S, v: &S) -> S;
    fn d_uu(&self, t: i64, u: &S, v: &S) -> S;
    fn d_uv(&self, t: i64, u: &S, v: &S) -> S;
    fn d_vv(&self, t: i64, u: &S, v: &S) -> S;

    fn name(&self) -> String {
        "custom".to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Potential<S> {
    /// `V(u) = omega^2 u^2 / 2`
    Quadratic { omega: S },
    /// `V(u) = u^4 / 4`
    Quartic,
}

impl<S: Scalar> Potential<S> {
    pub fn value(&self, u: &S) -> S {
        match self {
            Self::Quadratic { omega } => omega.clone() * omega.clone() * u.clone() * u.clone() / S::from_i64(2),
            Self::Quartic => {
                let u2 = u.clone() * u.clone();
                u2.clone() * u2 / S::from_i64(4)
            }
        }
    }

    pub fn derivative(&self, u: &S) -> S {
        match self {
            Self::Quadratic { omega } => omega.clone() * omega.clone() * u.clone(),
            Self::Quartic => u.clone() * u.clone() * u.clone(),
        }
    }

    pub fn second_derivative(&self, u: &S) -> S {
        match self {
            Self::Quadratic { omega } => omega.clone() * omega.clone(),
            Self::Quartic => S::from_i64(3) * u.clone() * u.clone(),
        }
    }
}

/// The potential action `L = v^2 / 2 - V(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialAction<S> {
    pub potential: Potential<S>,
}

impl<S: Scalar> PotentialAction<S> {
    pub fn new(potential: Potential<S>) -> Result<Self> {
        let l = Self { potential };
        check_partials(&l)?;
        Ok(l)
    }

    pub fn quadratic(omega: S) -> Result<Self> {
        Self::new(Potential::Quadratic { omega })
    }

    pub fn quartic() -> Result<Self> {
        Self::new(Potential::Quartic)
    }

    /// Builds a builtin by its configuration name.
    pub fn by_name(name: &str, omega: Option<S>) -> Result<Self> {
        match name {
            "quadratic_potential" => Self::quadratic(omega.unwrap_or_else(S::one)),
            "quartic_potential" => Self::quartic(),
            other => Err(Error::Config(format!("unknown lagrangian '{other}'"))),
        }
    }
}

impl<S: Scalar> Lagrangian<S> for PotentialAction<S> {
    fn eval(&self, _t: i64, u: &S, v: &S) -> S {
        v.clone() * v.clone() / S::from_i64(2) - self.potential.value(u)
    }
    fn d_u(&self, _t: i64, u: &S, _v: &S) -> S {
        -self.potential.derivative(u)
    }
    fn d_v(&self, _t: i64, _u: &S, v: &S) -> S {
        v.clone()
    }
    fn d_uu(&self, _t: i64, u: &S, _v: &S) -> S {
        -self.potential.second_derivative(u)
    }
    fn d_uv(&self, _t: i64, _u: &S, _v: &S) -> S {
        S::zero()
    }
    fn d_vv(&self, _t: i64, _u: &S, _v: &S) -> S {
        S::one()
    }
    fn name(&self) -> String {
        match self.potential {
            Potential::Quadratic { .. } => "quadratic_potential".into(),
            Potential::Quartic => "quartic_potential".into(),
        }
    }
}

type Field<S> = Arc<dyn Fn(i64, &S, &S) -> S + Send + Sync>;

/// A Lagrangian assembled from closures for `L` and its partials
/// `[L_u, L_v, L_uu, L_uv, L_vv]`.
#[derive(Clone)]
pub struct FnLagrangian<S> {
    name: String,
    eval: Field<S>,
    partials: [Field<S>; 5],
}

impl<S> fmt::Debug for FnLagrangian<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnLagrangian").field("name", &self.name).finish_non_exhaustive()
    }
}

impl<S: Scalar> FnLagrangian<S> {
    /// Fails if, in the float backend, the first partials disagree with
    /// central differences of `eval` on the probe points.
    pub fn new(name: &str, eval: Field<S>, partials: [Field<S>; 5]) -> Result<Self> {
        let l = Self { name: name.to_string(), eval, partials };
        check_partials(&l)?;
        Ok(l)
    }
}

impl<S: Scalar> Lagrangian<S> for FnLagrangian<S> {
    fn eval(&self, t: i64, u: &S, v: &S) -> S {
        (self.eval)(t, u, v)
    }
    fn d_u(&self, t: i64, u: &S, v: &S) -> S {
        (self.partials[0])(t, u, v)
    }
    fn d_v(&self, t: i64, u: &S, v: &S) -> S {
        (self.partials[1])(t, u, v)
    }
    fn d_uu(&self, t: i64, u: &S, v: &S) -> S {
        (self.partials[2])(t, u, v)
    }
    fn d_uv(&self, t: i64, u: &S, v: &S) -> S {
        (self.partials[3])(t, u, v)
    }
    fn d_vv(&self, t: i64, u: &S, v: &S) -> S {
        (self.partials[4])(t, u, v)
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}

const PROBES: [(i64, i64, i64); 5] = [(1, 0, 0), (2, 1, -1), (3, -3, 2), (5, 7, 5), (8, -2, -9)];

/// Float backend only: compares `d_u` and `d_v` with central differences of
/// `eval` at fixed probe points, to `1e-6` relative.
pub fn check_partials<S: Scalar>(l: &dyn Lagrangian<S>) -> Result<()> {
    if S::BACKEND != Backend::Float {
        return Ok(());
    }
    for &(t, u, v) in &PROBES {
        let (u, v) = (S::from_ratio(u, 2), S::from_ratio(v, 2));
        let hu = S::from_ratio(1, 100_000) * (S::one() + u.abs());
        let hv = S::from_ratio(1, 100_000) * (S::one() + v.abs());
        let two = S::from_i64(2);
        let fd_u = (l.eval(t, &(u.clone() + hu.clone()), &v) - l.eval(t, &(u.clone() - hu.clone()), &v)) / (two.clone() * hu);
        let fd_v = (l.eval(t, &u, &(v.clone() + hv.clone())) - l.eval(t, &u, &(v.clone() - hv.clone()))) / (two * hv);
        for (which, exact, fd) in [("d_u", l.d_u(t, &u, &v), fd_u), ("d_v", l.d_v(t, &u, &v), fd_v)] {
            let (e, d) = (exact.to_f64(), fd.to_f64());
            if (e - d).abs() > 1e-6 * (1.0 + e.abs().max(d.abs())) {
                return Err(Error::Config(format!(
                    "lagrangian '{}': {which} = {e} but central difference gives {d} at (t={t}, u={}, v={})",
                    l.name(),
                    u.to_f64(),
                    v.to_f64()
                )));
            }
        }
    }
    Ok(())
}
