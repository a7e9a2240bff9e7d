//! A fractional oscillator with fixed ends: Caputo formulation, quadratic
//! potential. Solves it, checks the gradient, and compares the solution near
//! alpha = 1 with the classical discrete oscillator.

use std::sync::Arc;

use fracnabla::variational::{solve, Boundary, Formulation, PotentialAction, VariationalProblem};
use fracnabla::{FracOrder, Grid, Result};

/// Classical solution of `f(s+1) - 2 f(s) + f(s-1) + omega^2 f(s) = 0` on
/// `s = 1..n-2` with `f(0) = start`, `f(n-1) = end`, by the Thomas algorithm.
pub fn classical_oscillator(n: usize, omega: f64, start: f64, end: f64) -> Vec<f64> {
    let m = n - 2;
    let diag = omega * omega - 2.0;
    let mut rhs = vec![0.0; m];
    rhs[0] -= start;
    rhs[m - 1] -= end;
    let (mut c, mut d) = (vec![0.0; m], vec![0.0; m]);
    for i in 0..m {
        let denom = diag - if i > 0 { c[i - 1] } else { 0.0 };
        c[i] = 1.0 / denom;
        d[i] = (rhs[i] - if i > 0 { d[i - 1] } else { 0.0 }) / denom;
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        x[i] = d[i] - if i + 1 < m { c[i] * x[i + 1] } else { 0.0 };
    }
    let mut out = vec![start];
    out.extend(x);
    out.push(end);
    out
}

pub fn run_example() -> Result<String> {
    let (n, omega) = (8usize, 0.5);
    let problem = |alpha: f64| {
        VariationalProblem::new(
            Grid::from_len(0.0, n),
            FracOrder::new(alpha)?,
            Formulation::Caputo,
            Boundary::FixedEnds(1.0, 0.5),
            Arc::new(PotentialAction::quadratic(omega)?),
        )
    };
    let mut report = String::new();
    for alpha in [0.25, 0.5, 0.75] {
        let s = solve(&problem(alpha)?, None, 1e-12, 50)?;
        report += &format!(
            "alpha = {alpha:<5} converged = {} iterations = {} gradient = {:.1e} y = {:?}\n",
            s.converged,
            s.iterations,
            s.gradient_norm,
            s.f.values().iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>()
        );
    }
    let near_one = solve(&problem(1.0 - 1e-6)?, None, 1e-12, 50)?;
    let classical = classical_oscillator(n, omega, 1.0, 0.5);
    let gap = near_one.f.values().iter().zip(&classical).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    report += &format!("alpha = 1 - 1e-6 vs classical oscillator: max gap {gap:.2e}\n");
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
