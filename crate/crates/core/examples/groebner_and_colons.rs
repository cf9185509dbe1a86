//! Gröbner bases, membership, intersections, colon ideals and dimension.

use frobkit::{Ideal, MonomialOrder, Result, Ring};

fn main() -> Result<()> {
    let ring = Ring::new(32003, &["x", "y"])?;
    let i = Ideal::parse(&ring, "x^2 - y, x*y - 1")?;
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let gb = i.groebner_in(order)?;
        let polys: Vec<String> = gb.polys().iter().map(|g| g.to_string()).collect();
        println!("{order:?} basis of {i}: {}", polys.join(", "));
    }

    let x = Ideal::parse(&ring, "x")?;
    let y = Ideal::parse(&ring, "y")?;
    let xy = Ideal::parse(&ring, "x*y")?;
    println!("{x} ∩ {y} = {}", x.intersect(&y)?.reduced()?);
    println!("{xy} : {x} = {}", xy.colon(&x)?.reduced()?);
    println!("x^2*y in {xy}: {}", xy.member(&ring.parse("x^2*y")?)?);

    let m = Ideal::parse(&ring, "x, y")?;
    println!("dim {m} = {}, height {}", m.dimension()?, m.height()?);
    println!("dim {x} = {}, height {}", x.dimension()?, x.height()?);
    Ok(())
}
