//! The same computation in both backends: the rational residual is exactly
//! zero, the float residual is at rounding level.

use fracnabla::identities::{run_trial, IdentityReport};
use fracnabla::{FracOrder, Rational, Result, Scalar};

fn worst<S: Scalar>(reports: &[IdentityReport<S>]) -> (String, bool) {
    let max = S::max_abs(reports.iter().map(|r| &r.residual));
    (max.to_text(), reports.iter().all(|r| r.passes()))
}

pub fn run_example() -> Result<String> {
    let mut report = String::new();
    for n in [4usize, 12, 64] {
        let exact = if n <= 12 {
            Some(worst(&run_trial(&FracOrder::<Rational>::parse("3/4")?, n, 7)?))
        } else {
            None
        };
        let float = worst(&run_trial(&FracOrder::<f64>::parse("3/4")?, n, 7)?);
        report += &format!(
            "N = {n:>2}: rational max residual {:>5}  float max residual {:>24} (all pass: {})\n",
            exact.map(|e| e.0).unwrap_or_else(|| "-".into()),
            float.0,
            float.1
        );
    }
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
