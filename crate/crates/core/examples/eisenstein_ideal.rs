//! Index of the Eisenstein ideal in the Hecke algebra at level p^2.
use eisencusp::characters::enumerate_characters;
use eisencusp::modsym::eisenstein_ideal_index;
use eisencusp::stevens::{cuspidal_order, make_spec, OrderConfig};

fn main() -> eisencusp::Result<()> {
    for p in [5u64, 7, 11] {
        for (i, phi) in enumerate_characters(p).iter().enumerate() {
            let idx = eisenstein_ideal_index(p, phi)?;
            let c = cuspidal_order(&make_spec(p * p, p, phi)?, OrderConfig::default())?;
            println!("p={p:<2} phi#{i:<2} |T/I| = {:<4} C = {}", idx.order, c.order.order);
        }
    }
    Ok(())
}
