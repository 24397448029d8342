//! Twisted special values Lambda(E, chi, 1) and the quadratic-twist companion.
use eisencusp::characters::enumerate_characters;
use eisencusp::stevens::{make_spec, twisted_pair, TwistFamily};

fn main() -> eisencusp::Result<()> {
    let phi = &enumerate_characters(5)[1];
    let spec = make_spec(25, 5, phi)?;
    let family = TwistFamily::new(7, 25, 1)?;
    for chi in family.admissible(&spec) {
        let p = twisted_pair(&spec, &family, &chi)?;
        println!("chi = {chi}: Lambda+ = {}", p.plus);
        println!("  Lambda(E, chi chi_7, 1) = {}", p.twisted_by_quadratic);
    }
    Ok(())
}
