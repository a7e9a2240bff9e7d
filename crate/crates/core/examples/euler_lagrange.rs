//! Euler–Lagrange residuals against the gradient of the action, computed by
//! exact differencing, for each formulation.

use std::sync::Arc;

use fracnabla::variational::{
    composed_el_residual, eta_shift_decomposition, gradient_oracle, stationarity_residual, Boundary, Formulation,
    Potential, PotentialAction, VariationalProblem,
};
use fracnabla::operators::nabla_left_riemann;
use fracnabla::{FracOrder, Grid, GridFn, Rational, Result, Scalar};

fn label(b: &Boundary<Rational>) -> String {
    match b {
        Boundary::Initial(v) => format!("f(a) = {}", v.to_text()),
        Boundary::FixedFractionalSum(v) => format!("terminal sum = {}", v.to_text()),
        Boundary::NaturalTerminal => "natural terminal".into(),
        Boundary::FixedEnds(x, y) => format!("f(a) = {}, f(b-1) = {}", x.to_text(), y.to_text()),
        Boundary::Natural => "natural".into(),
    }
}

pub fn run_example() -> Result<String> {
    let q = Rational::from_ratio;
    let potential = Potential::Quartic;
    let lagrangian = Arc::new(PotentialAction::new(potential.clone())?);
    let grid = Grid::from_len(q(0, 1), 6);
    let alpha = FracOrder::<Rational>::parse("1/2")?;
    let cases = [
        (Formulation::RiemannA, Boundary::Initial(q(1, 1))),
        (Formulation::RiemannB, Boundary::NaturalTerminal),
        (Formulation::Caputo, Boundary::FixedEnds(q(1, 1), q(-1, 1))),
        (Formulation::Caputo, Boundary::Natural),
    ];
    let mut report = String::new();
    for (formulation, boundary) in cases {
        let p = VariationalProblem::new(grid.clone(), alpha.clone(), formulation, boundary.clone(), lagrangian.clone())?;
        let free: Vec<Rational> = p.free_coordinates().iter().map(|&t| q(t * 3 - 7, 4)).collect();
        let f = p.assemble(&free);
        let predicted = stationarity_residual(&p, &f)?;
        let measured = gradient_oracle(&p, &f)?;
        report += &format!(
            "{formulation:>9} {:<24} EL residual == dJ/df: {}  (first entry {})\n",
            label(&boundary),
            predicted == measured,
            measured.get(measured.lo())?.to_text()
        );
        if formulation != Formulation::RiemannA && boundary != Boundary::Natural {
            let composed = composed_el_residual(&p, &f, &potential)?;
            report += &format!("{:>34} composed-operator form agrees: {}\n", "", composed == predicted);
        }
    }

    let eta = GridFn::from_fn(q(0, 1), 0, 5, |t| q(5 - t, 1));
    let (main, correction) = eta_shift_decomposition(&eta, &alpha, 0, 5)?;
    let direct = nabla_left_riemann(&eta, &alpha, -1)?.get(5)?.clone();
    report += &format!(
        "eta shift: {} + {} = {} (direct {})\n",
        main.to_text(),
        correction.to_text(),
        (main.clone() + correction.clone()).to_text(),
        direct.to_text()
    );
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
