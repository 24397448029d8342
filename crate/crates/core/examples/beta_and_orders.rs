//! The constant beta of E_d(phi) and the cuspidal-group order it predicts.
use eisencusp::characters::enumerate_characters;
use eisencusp::stevens::{beta, cuspidal_order, make_spec, GaussPolicy, OrderConfig};

fn main() -> eisencusp::Result<()> {
    let (n, d) = (169, 13);
    for (i, phi) in enumerate_characters(d).iter().enumerate() {
        let spec = make_spec(n, d, phi)?;
        let c = cuspidal_order(&spec, OrderConfig::default())?;
        let b = beta(&spec, GaussPolicy::default())?;
        let shown = b.as_rational().map(|r| r.to_string()).unwrap_or_else(|| format!("<degree {} over Q>", b.degree()));
        println!("N={n} d={d} phi#{i:<2} order(phi)={:<2} beta={shown:<24} C={}", phi.order(), c.order.order);
        for w in &c.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
