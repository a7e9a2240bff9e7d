//! Delta fractional sums and differences live on lattices shifted by the
//! order. Evaluated directly with the falling-function kernel, they match the
//! nabla operators at the shifted arguments.

use fracnabla::operators::{
    delta_left_riemann, delta_left_sum, delta_right_riemann, delta_right_riemann_direct, delta_right_sum, delta_right_sum_direct,
    nabla_left_riemann, nabla_left_sum_fn,
};
use fracnabla::{FracOrder, GridFn, Rational, Result, Scalar};

pub fn run_example() -> Result<String> {
    let q = Rational::from_ratio;
    let f = GridFn::from_fn(q(0, 1), 0, 7, |t| q(3 * t - t * t, 2));
    let alpha = FracOrder::<Rational>::parse("3/4")?;
    let mut report = String::new();

    let delta = delta_left_sum(&f, &alpha, 0)?;
    let nabla = nabla_left_sum_fn(&f, &alpha, 0)?;
    report += &format!("delta left sum lives on {} + Z\n", delta.origin().to_text());
    for t in [1, 4, 7] {
        report += &format!(
            "  (Delta_1^-a f)({}) = {:>12}   (nabla_0^-a f)({t}) = {:>12}\n",
            delta.point(t).to_text(),
            delta.get(t)?.to_text(),
            nabla.get(t)?.to_text()
        );
    }
    report += &format!("left sums agree: {}\n", delta.values() == nabla.values());
    report += &format!(
        "right sums agree: {}\n",
        delta_right_sum(&f, &alpha, 8)?.values() == delta_right_sum_direct(&f, &alpha, 8)?.values()
    );
    let left = delta_left_riemann(&f, &alpha, 0)?;
    report += &format!(
        "left Riemann differences agree: {} (lattice {} + Z)\n",
        left.values() == nabla_left_riemann(&f, &alpha, 0)?.values(),
        left.origin().to_text()
    );
    report += &format!(
        "right Riemann differences agree: {}\n",
        delta_right_riemann(&f, &alpha, 8)?.values() == delta_right_riemann_direct(&f, &alpha, 8)?.values()
    );
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
