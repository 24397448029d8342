//! Primes of Z[zeta_L] above q, valuations, and numerator orders.
use std::collections::BTreeSet;

use eisencusp::arith::{rat, CyclotomicNumber};
use eisencusp::idealnum::{numerator_order, primes_above, valuations_above};

fn main() -> eisencusp::Result<()> {
    for p in primes_above(12, 13, 2)? {
        println!("above 13 in Z[zeta_12]: f = {}, lift {:?}", p.residue_degree, p.local_factor);
    }
    // 2 + zeta_4 has norm 5
    let a = &CyclotomicNumber::from_rational(&rat(2, 1), 4) + &CyclotomicNumber::root_of_unity(4, 1);
    for (p, v) in valuations_above(&a, 5)? {
        println!("v_P(2 + i) = {v} at P = (5, {:?})", p.local_factor);
    }
    let b = a.scale(&rat(7, 3));
    let o = numerator_order(&b, &BTreeSet::from([2, 3]))?;
    println!("|R / (7(2 + i)/3)| away from 2, 3: {}  {:?}", o.order, o.contributions);
    Ok(())
}
