//! Nabla fractional sums and differences of a small grid function, in exact
//! arithmetic, next to their matrix forms.

use fracnabla::operators::{left_riemann_matrix, left_sum_matrix, mat_vec, Calculus, Kind, OperatorSpec, Side};
use fracnabla::{FracOrder, GridFn, Rational, Result, Scalar};

pub fn run_example() -> Result<String> {
    let mut report = String::new();
    let q = Rational::from_ratio;
    let ones = GridFn::constant(q(0, 1), 0, 5, q(1, 1));
    let half = FracOrder::<Rational>::parse("1/2")?;

    let sum = OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Sum, half.clone(), 0)?.apply(&ones)?;
    report += &format!("nabla_0^(-1/2) 1 = {:?}\n", sum.values().iter().map(|v| v.to_text()).collect::<Vec<_>>());
    report += &format!("at t = 3: {}\n", sum.get(3)?.to_text());

    let squares = GridFn::from_fn(q(0, 1), 0, 6, |t| q(t * t, 1));
    for name in ["nabla-left-riemann", "caputo-left", "nabla-right-sum", "nabla-right-riemann", "caputo-right"] {
        let (c, s, k) = OperatorSpec::<Rational>::parse_name(name)?;
        let anchor = if s == Side::Left { 0 } else { 6 };
        let out = OperatorSpec::new(c, s, k, FracOrder::parse("2/3")?, anchor)?.apply(&squares)?;
        report += &format!("{name:>20} of t^2, alpha = 2/3, on [{}, {}]: {}\n", out.lo(), out.hi(), out.get(out.lo())?.to_text());
    }

    let caputo_of_constant = OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Caputo, half.clone(), 0)?
        .apply(&GridFn::constant(q(0, 1), 0, 5, q(7, 1)))?;
    report += &format!("caputo of a constant: max |.| = {}\n", caputo_of_constant.max_abs().to_text());

    // the operators are triangular Toeplitz matrices of kernel weights
    let x: Vec<Rational> = squares.restrict(1, 6)?.into_values();
    let by_matrix = mat_vec(&left_sum_matrix(half.alpha(), 6)?, &x);
    let by_operator = OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Sum, half.clone(), 0)?.apply(&squares)?;
    report += &format!("sum matrix agrees with operator: {}\n", by_matrix == by_operator.values());
    let by_matrix = mat_vec(&left_riemann_matrix(&half, 6), &x);
    let by_operator = OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Riemann, half, 0)?.apply(&squares)?;
    report += &format!("difference matrix agrees with operator: {}\n", by_matrix == by_operator.values());
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
