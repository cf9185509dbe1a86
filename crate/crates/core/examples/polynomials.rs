//! Polynomial arithmetic over F_p: sums, products, Frobenius powers and
//! bracket containment.

use frobkit::{Result, Ring};

fn main() -> Result<()> {
    let ring = Ring::new(5, &["x", "y"])?;
    let f = ring.parse("x + y")?;
    let g = ring.parse("x - y")?;
    println!("({f}) * ({g}) = {}", &f * &g);
    println!("({f}) + ({}) = {}", ring.parse("4*x")?, &f + &ring.parse("4*x")?);

    // freshman's dream: (x + y)^5 = x^5 + y^5 in characteristic 5
    println!("({f})^[5] = {}", f.frobenius_pow(1)?);
    println!("({f})^5 = {}", f.pow(5));

    let cusp = ring.parse("x^2 + y^3")?;
    for q in [2, 4] {
        println!("{cusp} in (x^{q}, y^{q}): {}", cusp.in_bracket_max(q, &[0, 1]));
    }
    Ok(())
}
