//! Bracket powers, Frobenius roots, generalized and rational powers.

use frobkit::frobenius::{
    bracket_power, frobenius_root, generalized_power, rational_power, real_power, FrobeniusDigits,
    RealPowerRequest,
};
use frobkit::{Ideal, Result, Ring};
use num_rational::Rational64;

fn main() -> Result<()> {
    let ring = Ring::new(2, &["x", "y"])?;
    let m = Ideal::parse(&ring, "x, y")?;

    println!("{m}^[2] = {}", bracket_power(&m, 1)?);
    let i = Ideal::parse(&ring, "x^3*y^5")?;
    println!("{i}^[1/2] = {}", frobenius_root(&i, 1)?);

    let digits = FrobeniusDigits::new(3, 2);
    println!("3 in base 2: {:?}", digits.digits());
    println!("{m}^[3] = {}", generalized_power(&m, 3)?.reduced()?);
    println!("{m}^[3/2] = {}", rational_power(&m, 3, 1)?.reduced()?);

    let x = Ideal::parse(&ring, "x")?;
    let half = real_power(&x, &RealPowerRequest::new(Rational64::new(1, 2)))?;
    println!("{x}^[1/2] = {} (level {}, certified {})", half.ideal, half.level, half.certified);
    Ok(())
}
