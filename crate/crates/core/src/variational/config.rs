use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Boundary, Formulation, PotentialAction, Solution, VariationalProblem};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::numerics::{FracOrder, Scalar};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 50;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Value>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub end: Option<Value>,
    /// Riemann B: `"natural"` or `"fixed_fractional_sum"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal: Option<String>,
    /// Caputo: both ends free.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub natural: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Value>,
}

/// A variational problem as read from JSON. Numbers may be given as JSON
/// numbers or as text (`"p/q"` or decimal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub alpha: Value,
    pub a: Value,
    pub b: Value,
    pub formulation: String,
    #[serde(default)]
    pub boundary: BoundaryConfig,
    pub lagrangian: LagrangianConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

fn text(v: &Value, field: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Config(format!("{field}: expected a number or numeric text, got {other}"))),
    }
}

fn scalar<S: Scalar>(v: &Value, field: &str) -> Result<S> {
    S::parse_text(&text(v, field)?)
}

fn required<S: Scalar>(v: &Option<Value>, field: &str) -> Result<S> {
    scalar(v.as_ref().ok_or_else(|| Error::Config(format!("boundary value {field} is required")))?, field)
}

impl ProblemConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter.unwrap_or(DEFAULT_MAX_ITER)
    }

    pub fn alpha_text(&self) -> Result<String> {
        text(&self.alpha, "alpha")
    }

    pub fn build<S: Scalar>(&self) -> Result<VariationalProblem<S>> {
        self.build_with_alpha(FracOrder::parse(&self.alpha_text()?)?)
    }

    pub fn build_with_alpha<S: Scalar>(&self, alpha: FracOrder<S>) -> Result<VariationalProblem<S>> {
        let grid = Grid::new(scalar(&self.a, "a")?, scalar(&self.b, "b")?)?;
        let formulation = Formulation::parse(&self.formulation)?;
        let bc = &self.boundary;
        let boundary = match formulation {
            Formulation::RiemannA => Boundary::Initial(required(&bc.start, "A")?),
            Formulation::RiemannB => match bc.terminal.as_deref().unwrap_or("natural") {
                "natural" => Boundary::NaturalTerminal,
                "fixed_fractional_sum" => Boundary::FixedFractionalSum(required(&bc.start, "A")?),
                other => return Err(Error::Config(format!("unknown terminal condition '{other}'"))),
            },
            Formulation::Caputo => {
                if bc.natural == Some(true) {
                    Boundary::Natural
                } else {
                    Boundary::FixedEnds(required(&bc.start, "A")?, required(&bc.end, "B")?)
                }
            }
        };
        let omega = self.lagrangian.omega.as_ref().map(|v| scalar(v, "omega")).transpose()?;
        let lagrangian = PotentialAction::by_name(&self.lagrangian.name, omega)?;
        VariationalProblem::new(grid, alpha, formulation, boundary, Arc::new(lagrangian))
    }
}

/// Solution summary written next to the solution CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSidecar {
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub max_el_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<f64>,
}

impl<S: Scalar> From<&Solution<S>> for SolutionSidecar {
    fn from(s: &Solution<S>) -> Self {
        Self {
            gradient_norm: s.gradient_norm.to_f64(),
            iterations: s.iterations,
            converged: s.converged,
            max_el_residual: s.max_el_residual().to_f64(),
            multiplier: s.multiplier.as_ref().map(|m| m.to_f64()),
        }
    }
}

/// Writes `f` as CSV to `path` and the summary to `path` with extension
/// `.json`; returns the sidecar path.
pub fn write_solution<S: Scalar>(path: &Path, solution: &Solution<S>) -> Result<PathBuf> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    solution.f.write_csv(&mut out)?;
    out.flush()?;
    let sidecar = path.with_extension("json");
    let body = serde_json::to_string_pretty(&SolutionSidecar::from(solution)).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&sidecar, body + "\n")?;
    Ok(sidecar)
}

pub fn read_solution_sidecar(path: &Path) -> Result<SolutionSidecar> {
    serde_json::from_str(&fs::read_to_string(path)?).map_err(|e| Error::Parse(e.to_string()))
}
