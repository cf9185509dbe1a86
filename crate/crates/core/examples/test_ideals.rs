//! Test ideals, F-purity and the Skoda containment.

use frobkit::thresholds::{is_f_pure_level, is_strongly_f_regular, skoda_check, test_ideal};
use frobkit::{Ideal, MaximalIdeal, Result, Ring};
use num_rational::Rational64;

fn main() -> Result<()> {
    let ring = Ring::new(2, &["x", "y"])?;
    let m = MaximalIdeal::origin(&ring)?;
    let x = Ideal::parse(&ring, "x")?;
    let xy = Ideal::parse(&ring, "x, y")?;
    let cusp = Ideal::parse(&ring, "x^2 + y^3")?;

    for (ideal, t) in [(&x, Rational64::new(1, 2)), (&x, Rational64::from_integer(1)), (&xy, Rational64::new(3, 2)), (&cusp, Rational64::new(1, 2))] {
        let tau = test_ideal(ideal, t, 3)?;
        println!("tau({ideal}^{t}) = {} (e = {}, certified {})", tau.ideal, tau.stabilized_at_e, tau.certified);
    }

    let sfr = is_strongly_f_regular(&x, Rational64::new(1, 2), 3)?;
    println!("({x}, 1/2) strongly F-regular: {}", sfr.value);
    for e in 1..=3 {
        println!("(cusp, 1/2) F-pure at e={e}: {}", is_f_pure_level(&cusp, Rational64::new(1, 2), e, &m, false)?);
    }

    let i = Ideal::parse(&ring, "x^2, y^3")?;
    let skoda = skoda_check(&i, 2, 3)?;
    println!("tau({i}^2) ⊆ {i}: {} (certified {})", skoda.value, skoda.certified);
    Ok(())
}
