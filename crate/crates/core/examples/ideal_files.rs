//! Parsing ideal files, bad primes and reduction modulo p.

use frobkit::ideal_io::{bad_prime_bound, bad_primes, parse_ideal_file, reduce_mod_p};
use frobkit::Result;

const FILE: &str = "\
# a pair of plane curves
label: example
ring: x, y
gens:
  6x^2 - 35y   # implicit product
  7*x*y + 3*y^2
";

fn main() -> Result<()> {
    let spec = parse_ideal_file(FILE)?;
    print!("{}", spec.to_text());
    println!("bad primes {:?}, bound {}", bad_primes(&spec), bad_prime_bound(&spec).0);
    for p in [3, 11] {
        match reduce_mod_p(&spec, p) {
            Ok(ideal) => println!("mod {p}: {ideal}"),
            Err(err) => println!("mod {p}: {err}"),
        }
    }
    match parse_ideal_file("ring: x\ngens: x + z") {
        Ok(_) => unreachable!(),
        Err(err) => println!("{err}"),
    }
    Ok(())
}
