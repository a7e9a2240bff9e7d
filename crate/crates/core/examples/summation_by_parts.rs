//! Both sides of each summation-by-parts formula on one random pair of
//! integer-valued functions, with exact residuals.

use fracnabla::identities::{
    check_caputo_by_parts, check_delta_diff_by_parts, check_delta_sum_by_parts, check_riemann_by_parts,
    check_riemann_caputo_by_parts, check_shift_properties, check_sum_by_parts, random_function,
    riemann_caputo_anchor_b_defect, IdentityReport,
};
use fracnabla::{FracOrder, Rational, Result, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn line(r: &IdentityReport<Rational>) -> String {
    format!(
        "{:>4}  lhs = {:>14}  rhs = {:>14}  boundary = {:>14}  residual = {}\n",
        r.id.as_str(),
        r.lhs.to_text(),
        r.rhs.to_text(),
        r.boundary_term.to_text(),
        r.residual.to_text()
    )
}

pub fn run_example() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (a, b) = (0, 7);
    let f = random_function(&mut rng, Rational::from_i64(0), a, b);
    let g = random_function(&mut rng, Rational::from_i64(0), a, b);
    let alpha = FracOrder::<Rational>::parse("1/3")?;
    let mut report = format!("alpha = {alpha}, [a, b] = [{a}, {b}]\n");
    report += &line(&check_sum_by_parts(&f, &g, &alpha, a, b)?);
    report += &line(&check_riemann_by_parts(&f, &g, &alpha, a, b)?);
    report += &line(&check_delta_sum_by_parts(&f, &g, &alpha, a, b)?);
    report += &line(&check_delta_diff_by_parts(&f, &g, &alpha, a, b)?);
    report += &line(&check_caputo_by_parts(&f, &g, &alpha, a, b)?);
    report += &line(&check_riemann_caputo_by_parts(&f, &g, &alpha, a, b)?);
    for r in check_shift_properties(&f, &alpha)? {
        report += &line(&r);
    }

    // with the right Caputo difference anchored at b the Riemann/Caputo formula
    // is off by a term proportional to f(b) - f(b-1)
    let (residual, predicted) = riemann_caputo_anchor_b_defect(&f, &g, &alpha, a, b)?;
    report += &format!("anchor-b form: residual {} (closed form {})\n", residual.to_text(), predicted.to_text());
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
