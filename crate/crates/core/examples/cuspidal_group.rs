//! The rational cuspidal divisor class group of X_0(N) from modular symbols.
use eisencusp::modsym::{cuspidal_group, hecke_operator};

fn main() -> eisencusp::Result<()> {
    for n in [11u64, 37, 49, 50, 98] {
        let g = cuspidal_group(n)?;
        println!(
            "N={n:<3} genus {}  cusps {:<2} invariants {:?}  order {}",
            g.genus,
            g.cusp_count,
            g.invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            g.order
        );
    }
    let t2 = hecke_operator(37, 2)?;
    println!("T_2 on S_2(37) symbols: {t2:?}");
    Ok(())
}
