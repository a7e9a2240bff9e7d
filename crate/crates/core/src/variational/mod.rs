//! Discrete fractional variational problems: actions, first variations,
//! Euler–Lagrange residuals, a gradient oracle and a Newton solver.
//!
//! Problems live on `[a, b]` with `a` at offset `0` and `b` at offset `N`.
//! The action always sums over `t = a+1 ..= b-1`.

mod config;
mod lagrangian;
mod solver;

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFn};
use crate::numerics::{difference_weights, weights, Backend, FracOrder, Scalar};
use crate::operators::{caputo_left, caputo_right, nabla_left_riemann, nabla_left_sum, nabla_right_riemann, nabla_right_sum_fn};

pub use config::{read_solution_sidecar, write_solution, ProblemConfig, SolutionSidecar};
pub use lagrangian::{check_partials, FnLagrangian, Lagrangian, Potential, PotentialAction};
pub use solver::{solve, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// Argument `nabla_{a-1}^alpha f`, `f(a)` fixed.
    RiemannA,
    /// Argument `nabla_a^alpha f`, `f` on `[a+1, b-1]`, terminal condition.
    RiemannB,
    /// Arguments `f^rho` and `^C nabla_a^alpha f`.
    Caputo,
}

impl Formulation {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "riemann_a" => Ok(Self::RiemannA),
            "riemann_b" => Ok(Self::RiemannB),
            "caputo" => Ok(Self::Caputo),
            other => Err(Error::Config(format!("unknown formulation '{other}'"))),
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::RiemannA => "riemann_a",
            Self::RiemannB => "riemann_b",
            Self::Caputo => "caputo",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Boundary<S> {
    /// `f(a) = A` (Riemann A).
    Initial(S),
    /// `nabla_a^{-(1-alpha)} f(b-1) = A` (Riemann B).
    FixedFractionalSum(S),
    /// `L_2(b) = 0` (Riemann B).
    NaturalTerminal,
    /// `f(a) = A`, `f(b-1) = B` (Caputo).
    FixedEnds(S, S),
    /// Both ends free (Caputo).
    Natural,
}

#[derive(Clone)]
pub struct VariationalProblem<S> {
    grid: Grid<S>,
    alpha: FracOrder<S>,
    formulation: Formulation,
    boundary: Boundary<S>,
    lagrangian: Arc<dyn Lagrangian<S>>,
}

impl<S: Scalar> fmt::Debug for VariationalProblem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VariationalProblem")
            .field("grid", &self.grid)
            .field("alpha", &self.alpha.alpha())
            .field("formulation", &self.formulation)
            .field("boundary", &self.boundary)
            .field("lagrangian", &self.lagrangian.name())
            .finish()
    }
}

impl<S: Scalar> VariationalProblem<S> {
    pub fn new(
        grid: Grid<S>,
        alpha: FracOrder<S>,
        formulation: Formulation,
        boundary: Boundary<S>,
        lagrangian: Arc<dyn Lagrangian<S>>,
    ) -> Result<Self> {
        grid.require_interior()?;
        alpha.require_non_integer()?;
        match formulation {
            Formulation::RiemannA => {
                if alpha.n() > 2 {
                    return Err(Error::InvalidOrder(format!("variational orders must be below 2, got {}", alpha.alpha())));
                }
            }
            Formulation::RiemannB | Formulation::Caputo => alpha.require_unit_interval()?,
        }
        let compatible = matches!(
            (formulation, &boundary),
            (Formulation::RiemannA, Boundary::Initial(_))
                | (Formulation::RiemannB, Boundary::FixedFractionalSum(_) | Boundary::NaturalTerminal)
                | (Formulation::Caputo, Boundary::FixedEnds(..) | Boundary::Natural)
        );
        if !compatible {
            return Err(Error::Config(format!("boundary {boundary:?} does not apply to formulation {formulation}")));
        }
        if formulation == Formulation::Caputo && grid.len() < 4 {
            return Err(Error::Domain("the Caputo formulation needs N >= 3".into()));
        }
        Ok(Self { grid, alpha, formulation, boundary, lagrangian })
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    pub fn alpha(&self) -> &FracOrder<S> {
        &self.alpha
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    pub fn boundary(&self) -> &Boundary<S> {
        &self.boundary
    }

    pub fn lagrangian(&self) -> &dyn Lagrangian<S> {
        self.lagrangian.as_ref()
    }

    /// Same problem with another order.
    pub fn with_alpha(&self, alpha: FracOrder<S>) -> Result<Self> {
        Self::new(self.grid.clone(), alpha, self.formulation, self.boundary.clone(), self.lagrangian.clone())
    }

    fn a(&self) -> i64 {
        self.grid.a_index()
    }

    fn b(&self) -> i64 {
        self.grid.b_index()
    }

    /// Offsets on which `f` must be given.
    pub fn domain(&self) -> (i64, i64) {
        match self.formulation {
            Formulation::RiemannA | Formulation::Caputo => (self.a(), self.b() - 1),
            Formulation::RiemannB => (self.a() + 1, self.b() - 1),
        }
    }

    /// Prescribed values of `f`.
    pub fn fixed_values(&self) -> Vec<(i64, S)> {
        match &self.boundary {
            Boundary::Initial(v) => vec![(self.a(), v.clone())],
            Boundary::FixedEnds(va, vb) => vec![(self.a(), va.clone()), (self.b() - 1, vb.clone())],
            _ => Vec::new(),
        }
    }

    /// Coordinates of `f` that vary.
    pub fn free_coordinates(&self) -> Vec<i64> {
        let fixed: Vec<i64> = self.fixed_values().iter().map(|(t, _)| *t).collect();
        let (lo, hi) = self.domain();
        (lo..=hi).filter(|t| !fixed.contains(t)).collect()
    }

    /// `f` on the domain from free-coordinate values and the prescribed ones.
    pub fn assemble(&self, free: &[S]) -> GridFn<S> {
        let (lo, hi) = self.domain();
        let mut values = vec![S::zero(); (hi - lo + 1) as usize];
        for (t, v) in self.fixed_values() {
            values[(t - lo) as usize] = v;
        }
        for (t, v) in self.free_coordinates().into_iter().zip(free) {
            values[(t - lo) as usize] = v.clone();
        }
        GridFn::new(self.grid.a().clone(), lo, values)
    }

    fn require_domain(&self, f: &GridFn<S>) -> Result<GridFn<S>> {
        let (lo, hi) = self.domain();
        f.restrict(lo, hi)
    }

    /// The constraint row and value of the fixed-fractional-sum terminal
    /// condition: `k . f(a+1..b-1) = A` with `k_r = w_{b-1-r}(1-alpha)`.
    pub fn constraint(&self) -> Option<(Vec<S>, S)> {
        match &self.boundary {
            Boundary::FixedFractionalSum(target) => {
                let m = (self.b() - self.a() - 1) as usize;
                let w = weights(&self.alpha.complement(), m).expect("0 < 1 - alpha");
                Some(((0..m).map(|i| w[m - 1 - i].clone()).collect(), target.clone()))
            }
            _ => None,
        }
    }
}

/// `(u, v)` on `[a+1, b-1]`: the Lagrangian's two arguments along `f`.
pub fn arguments<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<(GridFn<S>, GridFn<S>)> {
    let f = p.require_domain(f)?;
    let (a, b) = (p.a(), p.b());
    let alpha = &p.alpha;
    Ok(match p.formulation {
        Formulation::RiemannA => (f.restrict(a + 1, b - 1)?, nabla_left_riemann(&f, alpha, a - 1)?.restrict(a + 1, b - 1)?),
        Formulation::RiemannB => (f.clone(), nabla_left_riemann(&f, alpha, a)?),
        Formulation::Caputo => (f.restrict(a, b - 2)?.shift_rho(), caputo_left(&f, alpha, a)?),
    })
}

fn partial_fields<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<(GridFn<S>, GridFn<S>)> {
    let (u, v) = arguments(p, f)?;
    let l = p.lagrangian();
    let l1 = u.map(|t, ut| l.d_u(t, ut, v.get(t).expect("same domain")));
    let l2 = u.map(|t, ut| l.d_v(t, ut, v.get(t).expect("same domain")));
    Ok((l1, l2))
}

/// `J(f) = sum_{t=a+1}^{b-1} L(t, u(t), v(t))`.
pub fn action<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<S> {
    let (u, v) = arguments(p, f)?;
    let l = p.lagrangian();
    let mut acc = S::zero();
    for (t, ut) in u.points() {
        acc += l.eval(t, ut, v.get(t)?);
    }
    Ok(acc)
}

/// `dJ(eta, f) = sum_t [eta_u(t) L_1(t) + (D^alpha eta)(t) L_2(t)]`, where
/// `eta_u` and `D^alpha` are the formulation's two argument maps.
pub fn first_variation<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>, eta: &GridFn<S>) -> Result<S> {
    let (l1, l2) = partial_fields(p, f)?;
    let (eu, ev) = arguments(p, eta)?;
    let mut acc = S::zero();
    for (t, x) in l1.points() {
        acc += eu.get(t)?.clone() * x.clone() + ev.get(t)?.clone() * l2.get(t)?.clone();
    }
    Ok(acc)
}

/// `(nabla_a^alpha eta(t), eta(a) w_{t-a}(-alpha))`; their sum is
/// `nabla_{a-1}^alpha eta(t)`. Needs `eta` on `[a, t]` and `t >= a+1`.
pub fn eta_shift_decomposition<S: Scalar>(eta: &GridFn<S>, alpha: &FracOrder<S>, a: i64, t: i64) -> Result<(S, S)> {
    if t < a + 1 {
        return Err(Error::Domain(format!("t = {t} must be at least a + 1 = {}", a + 1)));
    }
    let eta = eta.restrict(a, t)?;
    let main = nabla_left_riemann(&eta.restrict(a + 1, t)?, alpha, a)?.get(t)?.clone();
    let w = difference_weights(alpha.alpha(), (t - a) as usize);
    Ok((main, eta.get(a)?.clone() * w[(t - a) as usize].clone()))
}

fn zero_extend<S: Scalar>(f: &GridFn<S>, hi: i64) -> GridFn<S> {
    GridFn::from_fn(f.origin().clone(), f.lo(), hi, |t| f.get(t).cloned().unwrap_or_else(|_| S::zero()))
}

/// Euler–Lagrange residual on the formulation's index range:
///
/// - Riemann A: `L_1(s) + _b nabla^alpha L_2(s)` on `[a+1, b-1]`;
/// - Riemann B: `L_1(s) + (^C_{b+1} nabla^alpha L_2)(s)` on `[a+1, b-1]`,
///   with `L_2` extended by zero to `b` and `b+1`;
/// - Caputo: `L_1(s+1) + _b nabla^alpha L_2(s)` on `[a+1, b-2]`.
pub fn el_residual<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<GridFn<S>> {
    let (l1, l2) = partial_fields(p, f)?;
    let (a, b) = (p.a(), p.b());
    let alpha = &p.alpha;
    match p.formulation {
        Formulation::RiemannA => {
            let r = nabla_right_riemann(&l2, alpha, b)?;
            Ok(l1.map(|t, x| x.clone() + r.get(t).expect("same domain").clone()))
        }
        Formulation::RiemannB => {
            let c = caputo_right(&zero_extend(&l2, b + 1), alpha, b + 1)?;
            Ok(l1.map(|t, x| x.clone() + c.get(t).expect("domain [a+1, b]").clone()))
        }
        Formulation::Caputo => {
            let r = nabla_right_riemann(&l2, alpha, b)?;
            Ok(GridFn::from_fn(l1.origin().clone(), a + 1, b - 2, |s| {
                l1.get(s + 1).expect("s + 1 <= b - 1").clone() + r.get(s).expect("same domain").clone()
            }))
        }
    }
}

/// Riemann B only: the second form `L_1(s) + (^C_b nabla^alpha L_2^sigma)(s-1)`
/// of the same residual.
pub fn el_residual_shifted<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<GridFn<S>> {
    if p.formulation != Formulation::RiemannB {
        return Err(Error::Config("the shifted residual form belongs to the Riemann B formulation".into()));
    }
    let (l1, l2) = partial_fields(p, f)?;
    let sigma = zero_extend(&l2, p.b() + 1).shift_sigma();
    let c = caputo_right(&sigma, &p.alpha, p.b())?;
    Ok(l1.map(|t, x| x.clone() + c.get(t - 1).expect("domain [a, b-1]").clone()))
}

/// Extra equations of the Caputo natural case, `(at a, at b-1)`:
/// `L_1(a+1) - _b nabla^{-(1-alpha)} L_2(a+1)` and `L_2(b-1)`.
pub fn natural_boundary_residuals<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<(S, S)> {
    let (l1, l2) = partial_fields(p, f)?;
    let (a, b) = (p.a(), p.b());
    let comp = FracOrder::new(p.alpha.complement())?;
    let g = nabla_right_sum_fn(&l2, &comp, b)?;
    Ok((l1.get(a + 1)?.clone() - g.get(a + 1)?.clone(), l2.get(b - 1)?.clone()))
}

/// `dJ/df(u)` predicted by the Euler–Lagrange equations on every free
/// coordinate: the EL residual, plus the natural boundary equations in the
/// Caputo natural case.
pub fn stationarity_residual<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<GridFn<S>> {
    let el = el_residual(p, f)?;
    if p.formulation == Formulation::Caputo && p.boundary == Boundary::Natural {
        let (start, end) = natural_boundary_residuals(p, f)?;
        let (a, b) = (p.a(), p.b());
        return Ok(GridFn::from_fn(el.origin().clone(), a, b - 1, |t| {
            if t == a {
                start.clone()
            } else if t == b - 1 {
                end.clone()
            } else {
                el.get(t).expect("interior").clone()
            }
        }));
    }
    Ok(el)
}

/// `dJ/df(u)` for each free coordinate `u`, by differencing the action.
///
/// Float: central differences with step `1e-6 (1 + |f(u)|)`. Rational:
/// Richardson extrapolation of the central differences with steps 1 and 2,
/// exact whenever `J` is a polynomial of degree at most 4 in `f(u)`.
pub fn gradient_oracle<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<GridFn<S>> {
    let f = p.require_domain(f)?;
    let free = p.free_coordinates();
    let bumped = |u: i64, h: &S| -> Result<S> {
        let plus = f.map(|t, x| if t == u { x.clone() + h.clone() } else { x.clone() });
        let minus = f.map(|t, x| if t == u { x.clone() - h.clone() } else { x.clone() });
        Ok((action(p, &plus)? - action(p, &minus)?) / (S::from_i64(2) * h.clone()))
    };
    let mut values = Vec::with_capacity(free.len());
    for &u in &free {
        let g = match S::BACKEND {
            Backend::Float => {
                let h = S::from_ratio(1, 1_000_000) * (S::one() + f.get(u)?.abs());
                bumped(u, &h)?
            }
            Backend::Rational => {
                let d1 = bumped(u, &S::one())?;
                let d2 = bumped(u, &S::from_i64(2))?;
                (S::from_i64(4) * d1 - d2) / S::from_i64(3)
            }
        };
        values.push(g);
    }
    // free coordinates are always a contiguous range
    Ok(GridFn::new(f.origin().clone(), free[0], values))
}

/// The action's arguments as affine maps of the free coordinates:
/// `u = P x + p0`, `v = D x + d0` over `t = a+1 ..= b-1`.
#[derive(Debug, Clone)]
pub struct LinearMaps<S> {
    pub free: Vec<i64>,
    pub p: DMatrix<S>,
    pub p0: Vec<S>,
    pub d: DMatrix<S>,
    pub d0: Vec<S>,
}

/// Builds [`LinearMaps`] from the kernel weights.
pub fn linear_maps<S: Scalar>(p: &VariationalProblem<S>) -> LinearMaps<S> {
    let (a, b) = (p.a(), p.b());
    let (lo, hi) = p.domain();
    let rows = (b - a - 1) as usize;
    let cols = (hi - lo + 1) as usize;
    let w_diff = difference_weights(p.alpha.alpha(), (b - a) as usize);
    let w_comp = weights(&p.alpha.complement(), (b - a) as usize).ok();
    let u_full = DMatrix::from_fn(rows, cols, |i, j| {
        let (t, r) = (a + 1 + i as i64, lo + j as i64);
        let src = if p.formulation == Formulation::Caputo { t - 1 } else { t };
        if r == src { S::one() } else { S::zero() }
    });
    let v_full = DMatrix::from_fn(rows, cols, |i, j| {
        let (t, r) = (a + 1 + i as i64, lo + j as i64);
        if r > t {
            return S::zero();
        }
        if p.formulation == Formulation::Caputo && r == a {
            let w = w_comp.as_ref().expect("0 < alpha < 1");
            return -w[(t - a - 1) as usize].clone();
        }
        w_diff[(t - r) as usize].clone()
    });
    let free = p.free_coordinates();
    let fixed = p.fixed_values();
    let pick = |m: &DMatrix<S>| DMatrix::from_fn(rows, free.len(), |i, j| m[(i, (free[j] - lo) as usize)].clone());
    let offset = |m: &DMatrix<S>| {
        (0..rows)
            .map(|i| {
                let mut acc = S::zero();
                for (t, v) in &fixed {
                    acc += m[(i, (t - lo) as usize)].clone() * v.clone();
                }
                acc
            })
            .collect::<Vec<_>>()
    };
    LinearMaps { p: pick(&u_full), p0: offset(&u_full), d: pick(&v_full), d0: offset(&v_full), free }
}

/// `y` on `[a+1, b+1]`: `y` on `[a+1, b-1]` continued so that
/// `nabla_a^alpha y` vanishes at `b` and `b+1`.
pub fn extend_natural_terminal<S: Scalar>(y: &GridFn<S>, alpha: &FracOrder<S>, a: i64, b: i64) -> Result<GridFn<S>> {
    let y = y.restrict(a + 1, b - 1)?;
    let w = difference_weights(alpha.alpha(), (b + 1 - a) as usize);
    let mut values = y.values().to_vec();
    for t in [b, b + 1] {
        let mut acc = S::zero();
        for r in (a + 1)..t {
            acc += w[(t - r) as usize].clone() * values[(r - a - 1) as usize].clone();
        }
        values.push(-acc);
    }
    Ok(GridFn::new(y.origin().clone(), a + 1, values))
}

/// The Euler–Lagrange residual of a potential action written with composed
/// operators, on the same range as [`el_residual`]:
///
/// - Riemann B: `(^C_{b+1} nabla^alpha nabla_a^alpha y)(s) - V'(y(s))`, with
///   `y` continued by [`extend_natural_terminal`];
/// - Caputo: `(_b nabla^alpha ^C nabla_a^alpha y)(s) - V'(y^rho(sigma(s)))`.
pub fn composed_el_residual<S: Scalar>(p: &VariationalProblem<S>, y: &GridFn<S>, potential: &Potential<S>) -> Result<GridFn<S>> {
    let (a, b) = (p.a(), p.b());
    let alpha = &p.alpha;
    match p.formulation {
        Formulation::RiemannB => {
            let ext = extend_natural_terminal(y, alpha, a, b)?;
            let inner = nabla_left_riemann(&ext, alpha, a)?;
            let outer = caputo_right(&inner, alpha, b + 1)?;
            Ok(GridFn::from_fn(y.origin().clone(), a + 1, b - 1, |s| {
                outer.get(s).expect("domain [a+1, b]").clone() - potential.derivative(y.get(s).expect("y on [a+1, b-1]"))
            }))
        }
        Formulation::Caputo => {
            let inner = caputo_left(&y.restrict(a, b - 1)?, alpha, a)?;
            let outer = nabla_right_riemann(&inner, alpha, b)?;
            let rho = y.shift_rho();
            Ok(GridFn::from_fn(y.origin().clone(), a + 1, b - 2, |s| {
                outer.get(s).expect("domain [a+1, b-1]").clone() - potential.derivative(rho.get(s + 1).expect("y on [a, b-1]"))
            }))
        }
        Formulation::RiemannA => Err(Error::Config("no composed form is stated for the Riemann A formulation".into())),
    }
}

/// `nabla_a^{-(1-alpha)} f(b-1)` for the Riemann B terminal condition.
pub fn terminal_fractional_sum<S: Scalar>(p: &VariationalProblem<S>, f: &GridFn<S>) -> Result<S> {
    let comp = FracOrder::new(p.alpha.complement())?;
    nabla_left_sum(&p.require_domain(f)?, &comp, p.a(), p.b() - 1)
}
