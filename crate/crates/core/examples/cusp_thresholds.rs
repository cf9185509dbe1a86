//! F-pure threshold and least critical exponent estimates for the cusp
//! x^2 + y^3 at the origin. The threshold in characteristic 0 is 5/6.

use frobkit::thresholds::{fpt_estimate, lce_estimate};
use frobkit::{Ideal, MaximalIdeal, Result, Ring};

fn main() -> Result<()> {
    for (p, e_max) in [(2, 3), (5, 2), (7, 2), (11, 2)] {
        let ring = Ring::new(p, &["x", "y"])?;
        let cusp = Ideal::parse(&ring, "x^2 + y^3")?;
        let m = MaximalIdeal::origin(&ring)?;
        let fpt = fpt_estimate(&cusp, &m, e_max, "cusp")?;
        let lce = lce_estimate(&cusp, &m, e_max, "cusp", false)?;
        for (a, b) in fpt.rows.iter().zip(&lce.rows) {
            println!(
                "p={p} q={:<3} nu={:<3} fpt in [{}, {}]  lce nu={}",
                a.q, a.nu, a.lower, a.upper, b.nu
            );
        }
    }
    Ok(())
}
