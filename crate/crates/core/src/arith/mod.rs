//! Exact arithmetic: machine-integer number theory helpers, integer
//! polynomials and the cyclotomic fields `Q(zeta_L)`.

mod cyclotomic;
mod poly;

pub use cyclotomic::CyclotomicNumber;
pub use poly::{cyclotomic_polynomial, IntPolynomial};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Trial-division factorization of a machine integer, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_u64(n) == vec![(n, 1)]
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1`, `n >= 1`).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// Modular inverse of `a` modulo `n`, if it exists.
pub fn inverse_mod(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n))
}

/// `q`-adic valuation of a nonzero big integer.
pub fn valuation(n: &BigInt, q: u64) -> u32 {
    let q = BigInt::from(q);
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return u32::MAX;
    }
    loop {
        let (d, r) = n.div_rem(&q);
        if !r.is_zero() {
            return v;
        }
        n = d;
        v += 1;
    }
}

/// Full factorization of a positive big integer (Pollard rho and
/// Miller-Rabin from `num-prime` behind the scenes).
pub fn factor_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    if n.is_one() || n.is_zero() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut v: Vec<(BigUint, u32)> = num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect();
    v.sort();
    v
}

/// Part of `n` coprime to every prime in `excluded`.
pub fn prime_to_part(n: &BigInt, excluded: &[u64]) -> BigInt {
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    for &q in excluded {
        let qb = BigInt::from(q);
        while (&n % &qb).is_zero() {
            n /= &qb;
        }
    }
    n
}

/// Numerator of a rational as a `BigInt` (sign kept).
pub fn numer(r: &Rational) -> BigInt {
    r.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_mobius() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(121), 110);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(5), -1);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(2, 3), 2);
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
    }

    #[test]
    fn big_factorization() {
        let n: BigUint = "1000000016000000063".parse().unwrap();
        let f = factor_big(&n);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, BigUint::from(1_000_000_007u64));
    }

    #[test]
    fn prime_to() {
        assert_eq!(prime_to_part(&BigInt::from(360), &[2, 3]), BigInt::from(5));
    }
}
