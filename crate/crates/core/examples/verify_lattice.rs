//! A small run of the verification suite, printed as JSON lines like
//! `fracnabla verify`.

use fracnabla::identities::run_suite;
use fracnabla::{FracOrder, Rational, Result};

pub fn run_example() -> Result<String> {
    let alphas = vec![FracOrder::<Rational>::parse("1/2")?, FracOrder::parse("5/4")?];
    let records = run_suite(&alphas, &[3, 5], 1, 11)?;
    let mut out = String::new();
    for r in &records {
        out += &serde_json::to_string(r).expect("plain record");
        out.push('\n');
    }
    out += &format!("{} checks, {} failed\n", records.len(), records.iter().filter(|r| !r.pass).count());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
