//! Closed form against the modular-symbols oracle beyond the acceptance
//! levels, and the support prediction against the oracle's full orders.

use num_bigint::BigUint;
use num_traits::One;

use eisencusp::arith::divisors;
use eisencusp::characters::enumerate_characters;
use eisencusp::modsym::{eigenpart_order, eigenpart_order_full, TrivialCompletion};
use eisencusp::stevens::{cuspidal_order, make_spec, OrderConfig};

fn pairs(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&d| d != 1 && n % (d * d) == 0).collect()
}

#[test]
fn larger_levels_agree() {
    for n in [75u64, 100, 169] {
        for d in pairs(n) {
            for phi in enumerate_characters(d) {
                let closed = cuspidal_order(&make_spec(n, d, &phi).unwrap(), OrderConfig::default()).unwrap();
                let oracle = eigenpart_order(n, d, &phi, TrivialCompletion::default()).unwrap();
                assert_eq!(closed.order.order, oracle.order, "N={n} d={d} {phi}");
            }
        }
    }
}

#[test]
fn completion_choice_does_not_change_prime_to_orders() {
    for n in [25u64, 36, 49, 50] {
        for d in pairs(n) {
            let phi = enumerate_characters(d).into_iter().next().unwrap();
            let a = eigenpart_order(n, d, &phi, TrivialCompletion::Infinity).unwrap();
            let b = eigenpart_order(n, d, &phi, TrivialCompletion::Zero).unwrap();
            assert_eq!(a.order, b.order, "N={n} d={d}");
        }
    }
}

#[test]
fn prime_to_part_divides_full_order() {
    for n in [49u64, 50, 98] {
        for d in pairs(n) {
            for phi in enumerate_characters(d) {
                let full = eigenpart_order_full(n, d, &phi, TrivialCompletion::default()).unwrap();
                let part = eigenpart_order(n, d, &phi, TrivialCompletion::default()).unwrap().order;
                assert!(part >= BigUint::one());
                assert_eq!(&full % &part, BigUint::from(0u32), "N={n} d={d} {phi}");
            }
        }
    }
}

#[test]
fn gauss_level_and_variant_leave_orders_unchanged() {
    use eisencusp::stevens::{BetaVariant, GaussLevel};
    for n in [4u64, 8, 16, 36, 49, 50, 72, 100] {
        for d in pairs(n) {
            for phi in enumerate_characters(d) {
                let spec = make_spec(n, d, &phi).unwrap();
                let base = cuspidal_order(&spec, OrderConfig::default()).unwrap();
                assert_eq!(base.theorem.order, base.proposition.order, "N={n} d={d} {phi}");
                let conductor = OrderConfig {
                    gauss: GaussLevel::Conductor,
                    ..OrderConfig::default()
                };
                let c = cuspidal_order(&spec, conductor).unwrap();
                assert_eq!(base.order.order, c.order.order, "N={n} d={d} {phi}");
                let prop = OrderConfig {
                    primary: BetaVariant::PropositionVariant,
                    ..OrderConfig::default()
                };
                assert_eq!(base.order.order, cuspidal_order(&spec, prop).unwrap().order.order);
            }
        }
    }
}
