//! The generic link of an ideal and the levelwise comparison of its
//! threshold invariants.

use frobkit::linkage::{build_generic_linkage, compare_lce_levelwise};
use frobkit::{Ideal, Result, Ring};

fn main() -> Result<()> {
    let ring = Ring::new(3, &["x", "y"])?;
    let ideal = Ideal::parse(&ring, "x, y")?;
    let ld = build_generic_linkage(&ideal)?;
    println!("S = F_3[{}]", ld.ring.var_names().join(", "));
    println!("L = {}", ld.link_ideal);
    println!("J = {}", ld.linked);

    let check = ld.verify()?;
    println!("structure: {check:?}");

    for e in 1..=2 {
        let lce = compare_lce_levelwise(&ld, e, false)?;
        println!(
            "e={e}: nu (I·S)^c = {}, nu L^c = {}, nu J^c = {}",
            lce.ideal.nu, lce.link.nu, lce.linked.nu
        );
    }
    Ok(())
}
