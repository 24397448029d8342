//! Exact arithmetic in Q(zeta_L).
use eisencusp::arith::{rat, CyclotomicNumber};

fn main() -> eisencusp::Result<()> {
    let z = CyclotomicNumber::root_of_unity(12, 1);
    let one = CyclotomicNumber::one(12);
    let x = &(&z + &one) * &z.conj();
    println!("x = (zeta + 1) * conj(zeta) = {x}");
    println!("x^-1 = {}", x.inv()?);
    println!("N(x) = {}", x.absolute_norm());
    println!("N(1 - zeta_7) = {}", (&CyclotomicNumber::one(7) - &CyclotomicNumber::root_of_unity(7, 1)).absolute_norm());

    // zeta_4 seen at level 12, and brought back down
    let i = CyclotomicNumber::root_of_unity(4, 1).raise_level(12)?;
    println!("i at level 12: {i}; lowered: {:?}", i.try_lower_level(4).map(|v| v.to_string()));
    println!("3/5 * zeta_12 embedded: {}", z.scale(&rat(3, 5)).complex_embedding(1)?);
    Ok(())
}
