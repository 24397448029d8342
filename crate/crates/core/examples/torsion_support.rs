//! Primes that can divide rational torsion over Q(mu_d) in the phi-parts.
use eisencusp::stevens::{torsion_support, OrderConfig};

fn main() -> eisencusp::Result<()> {
    for (n, d) in [(9, 3), (25, 5), (50, 5), (100, 10), (169, 13)] {
        let t = torsion_support(n, d, OrderConfig::default())?;
        println!("N={n:<3} d={d:<2} S_d = {:?}", t.support);
    }
    Ok(())
}
