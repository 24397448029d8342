//! Closed-form orders against eigen-divisor classes in the cuspidal group.
use eisencusp::arith::divisors;
use eisencusp::characters::enumerate_characters;
use eisencusp::modsym::{eigenpart_order, TrivialCompletion};
use eisencusp::stevens::{cuspidal_order, make_spec, OrderConfig};

fn main() -> eisencusp::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    for d in divisors(n).into_iter().filter(|&d| d > 1 && n % (d * d) == 0) {
        for (i, phi) in enumerate_characters(d).iter().enumerate() {
            let closed = cuspidal_order(&make_spec(n, d, phi)?, OrderConfig::default())?;
            let oracle = eigenpart_order(n, d, phi, TrivialCompletion::default())?;
            let tag = if closed.order.order == oracle.order { "ok" } else { "MISMATCH" };
            println!("N={n} d={d} phi#{i}: formula {} oracle {} {tag}", closed.order.order, oracle.order);
        }
    }
    Ok(())
}
