//! A sweep over several primes, written as CSV and markdown.

use frobkit::ideal_io::parse_ideal_file;
use frobkit::linkage::{run_comparison, SweepOptions};
use frobkit::Result;

fn main() -> Result<()> {
    let spec = parse_ideal_file("label: cusp\nring: x, y\ngens: x^2 + y^3\n")?;
    let mut opts = SweepOptions::new(vec![2, 3, 5, 7], 2);
    opts.jobs = 4;
    let report = run_comparison(&spec, &opts)?;
    print!("{}", report.to_csv()?);
    println!();
    print!("{}", report.to_markdown());
    println!("success: {}", report.success());
    Ok(())
}
